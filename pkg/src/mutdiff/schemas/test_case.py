from enum import Enum
from typing import Dict, List, Union
from pydantic import BaseModel, ConfigDict, Field, StrictBool, StrictInt, RootModel

Scalar = Union[StrictBool, StrictInt]


class TestOutcome(str, Enum):
    __test__ = False

    PASSING = "passing"
    FAILING = "failing"


class TestCase(BaseModel):
    """A test case (I, O): inputs for every declared input and a possibly partial expected output"""

    __test__ = False
    model_config = ConfigDict(populate_by_name=True, frozen=True)

    input: Dict[str, Scalar] = Field(..., description="Value of every declared input variable")
    expected_output: Dict[str, Scalar] = Field(
        default_factory=dict, alias="expected", description="Expected values of a subset of the outputs"
    )


class TestSuite(RootModel[List[TestCase]]):
    """Test-suite file contents: a JSON list of {input, expected} records"""

    __test__ = False

    def __iter__(self):
        return iter(self.root)

    def __len__(self) -> int:
        return len(self.root)
