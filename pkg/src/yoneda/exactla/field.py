"""Base fields: the rationals and prime fields GF(p)."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np

DEFAULT_PRIME = 32003


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


@dataclass(frozen=True)
class FieldSpec:
    """Exact scalar field.

    ``kind`` is ``"prime"`` (elements are ``int64`` residues in ``[0, p)``)
    or ``"rational"`` (elements are :class:`fractions.Fraction` in object
    arrays).
    """

    kind: str = "prime"
    p: int | None = DEFAULT_PRIME

    def __post_init__(self):
        if self.kind == "prime":
            if self.p is None or not _is_prime(self.p):
                raise ValueError(f"GF(p) needs a prime p, got {self.p!r}")
            if self.p >= 3_037_000_499:
                raise ValueError("p must fit products in int64")
        elif self.kind == "rational":
            object.__setattr__(self, "p", None)
        else:
            raise ValueError(f"unknown field kind {self.kind!r}")

    @classmethod
    def rational(cls) -> "FieldSpec":
        return cls("rational", None)

    @classmethod
    def prime(cls, p: int = DEFAULT_PRIME) -> "FieldSpec":
        return cls("prime", p)

    @classmethod
    def parse(cls, text: str) -> "FieldSpec":
        """Parse the CLI notation ``q`` or ``fp:P``."""
        text = text.strip().lower()
        if text in ("q", "rational", "qq"):
            return cls.rational()
        if text.startswith("fp:"):
            return cls.prime(int(text[3:]))
        raise ValueError(f"field must be 'q' or 'fp:P', got {text!r}")

    @property
    def is_prime(self) -> bool:
        return self.kind == "prime"

    @property
    def dtype(self):
        return np.int64 if self.is_prime else object

    def __str__(self):
        return f"GF({self.p})" if self.is_prime else "Q"

    def to_json(self) -> dict:
        if self.is_prime:
            return {"kind": "prime", "p": self.p}
        return {"kind": "rational"}

    # scalars

    def scalar(self, x):
        if self.is_prime:
            if isinstance(x, Fraction):
                return (x.numerator % self.p) * pow(x.denominator, -1, self.p) % self.p
            return int(x) % self.p
        return Fraction(x)

    def inv(self, x):
        if self.is_prime:
            x = int(x) % self.p
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return pow(x, -1, self.p)
        return 1 / Fraction(x)

    def neg_one_pow(self, e: int):
        return self.scalar(-1 if e % 2 else 1)

    def format(self, x) -> str:
        """Exact string form: a decimal residue, or ``num/den``."""
        if self.is_prime:
            return str(int(x) % self.p)
        x = Fraction(x)
        return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

    def parse_scalar(self, text: str):
        return self.scalar(Fraction(text))

    # arrays

    def zeros(self, shape) -> np.ndarray:
        if self.is_prime:
            return np.zeros(shape, dtype=np.int64)
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out

    def eye(self, n: int) -> np.ndarray:
        out = self.zeros((n, n))
        for i in range(n):
            out[i, i] = self.scalar(1)
        return out

    def array(self, data) -> np.ndarray:
        if self.is_prime:
            return np.asarray(data, dtype=np.int64) % self.p
        arr = np.array(data, dtype=object)
        return np.vectorize(Fraction, otypes=[object])(arr) if arr.size else arr

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.is_prime:
            return np.mod(arr, self.p)
        return arr

    def matmul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[-1] == 0:
            return self.zeros(a.shape[:-1] + b.shape[1:])
        return self.reduce(a @ b)

    def is_zero(self, arr) -> bool:
        return not np.any(arr != 0)
