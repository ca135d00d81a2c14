import time
from typing import Optional

from mutdiff.exceptions import DeadlineExceededException


class Deadline:
    """Wall-clock budget checked cooperatively; None seconds never expires."""

    def __init__(self, seconds: Optional[float] = None):
        self.seconds = seconds
        self.started = time.monotonic()
        self.expires_at = None if seconds is None else self.started + seconds

    def expired(self) -> bool:
        return self.expires_at is not None and time.monotonic() >= self.expires_at

    def check(self) -> None:
        if self.expired():
            raise DeadlineExceededException(f"deadline of {self.seconds}s exceeded")

    @property
    def elapsed(self) -> float:
        return time.monotonic() - self.started
