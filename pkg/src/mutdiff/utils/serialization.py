from typing import Any

import orjson
from pydantic import BaseModel

JSON_OPTIONS = orjson.OPT_INDENT_2 | orjson.OPT_SORT_KEYS


def to_jsonable(data: Any) -> Any:
    if isinstance(data, BaseModel):
        return data.model_dump(mode="json", by_alias=True)
    if isinstance(data, (list, tuple)):
        return [to_jsonable(item) for item in data]
    return data


def dumps(data: Any) -> bytes:
    """Sorted-key, two-space indented JSON with a trailing newline"""
    return orjson.dumps(to_jsonable(data), option=JSON_OPTIONS | orjson.OPT_APPEND_NEWLINE)
