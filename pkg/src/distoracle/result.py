from __future__ import annotations

from dataclasses import dataclass
from typing import Generic, TypeVar, Union

from .exception import UnwrapError

T = TypeVar("T")
E = TypeVar("E")


@dataclass(frozen=True)
class _Ok(Generic[T]):
    value: T


@dataclass(frozen=True)
class _Err(Generic[E]):
    error: E


class Result(Generic[T, E]):
    """Outcome of an operation whose failure is a reported value rather than an exception.

    Parameter selection and graph validation answer with one.
    """

    __slots__ = ("res",)

    def __init__(self, v: Union[_Ok[T], _Err[E]]) -> None:
        self.res = v

    @classmethod
    def create_ok(cls, value: T) -> Result[T, E]:
        return Result(_Ok(value))

    @classmethod
    def create_err(cls, error: E) -> Result[T, E]:
        return Result(_Err(error))

    def is_ok(self) -> bool:
        return isinstance(self.res, _Ok)

    def is_err(self) -> bool:
        return isinstance(self.res, _Err)

    def unwrap(self) -> T:
        if isinstance(self.res, _Ok):
            return self.res.value
        raise UnwrapError(f"called `Result.unwrap()` on an `Err` value: {self.res.error}")

    def unwrap_err(self) -> E:
        if isinstance(self.res, _Ok):
            raise UnwrapError(f"called `Result.unwrap_err()` on an `Ok` value: {self.res.value}")
        return self.res.error

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Result) and self.res == other.res

    def __str__(self) -> str:
        if isinstance(self.res, _Ok):
            return f"Ok({self.res.value})"
        return f"Err({self.res.error})"

    __repr__ = __str__

    @property
    def value(self) -> T:
        return self.unwrap()

    @property
    def error(self) -> E:
        return self.unwrap_err()


Ok = Result.create_ok
Err = Result.create_err
