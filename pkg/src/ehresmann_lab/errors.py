"""Exceptions and verdict records shared by every checker."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Any


class LawViolation(ValueError):
    """An input table breaks a named law; ``witness`` reproduces the failure."""

    def __init__(self, law: str, witness: tuple = (), message: str = ""):
        self.law = law
        self.witness = tuple(witness)
        self.message = message
        text = f"{law}: witness {self.witness}"
        if message:
            text += f" ({message})"
        super().__init__(text)


class InternalConsistencyError(RuntimeError):
    """A construction that is guaranteed to succeed did not.

    Raised only when validated input produces an invalid result, so it points
    at a bug in this package rather than at the input.
    """

    def __init__(self, step: str, witness: tuple = (), message: str = ""):
        self.step = step
        self.witness = tuple(witness)
        super().__init__(f"{step}: witness {self.witness} {message}".rstrip())


class CapExceeded(ValueError):
    def __init__(self, required: int, cap: int):
        self.required = required
        self.cap = cap
        super().__init__(f"materialization needs {required} table cells, cap is {cap}")


class ParseError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


@dataclass
class Verdict:
    """Outcome of a yes/no check. Truthy iff the check passed."""

    ok: bool
    law: str = ""
    witness: tuple | None = None
    detail: str = ""
    data: Any = None
    extra: dict = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok

    @classmethod
    def passed(cls, law: str = "", data: Any = None, **extra) -> "Verdict":
        return cls(True, law, None, "", data, extra)

    @classmethod
    def failed(cls, law: str, witness: tuple, detail: str = "", **extra) -> "Verdict":
        return cls(False, law, tuple(witness), detail, None, extra)

    @classmethod
    def from_violation(cls, exc: LawViolation) -> "Verdict":
        return cls(False, exc.law, exc.witness, exc.message)

    def as_dict(self) -> dict:
        out = {"ok": self.ok, "law": self.law}
        if self.witness is not None:
            out["witness"] = [int(w) if hasattr(w, "__index__") else w for w in self.witness]
        if self.detail:
            out["detail"] = self.detail
        return out
