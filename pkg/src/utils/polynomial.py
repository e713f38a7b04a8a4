"""Residue arithmetic in Z_m[t^{±1}]/(p(t)) for Alexander quandles."""

import math
import re
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from src.core.exceptions import InvalidSpecError

# One signed term: optional coefficient, optional t with optional exponent
_TERM_PATTERN = re.compile(r"^(\d*)\*?(t(?:\^?(\d+))?)?$")


def bracket_polynomial(k: int) -> list[int]:
    """Coefficients (low to high) of [k]_t = 1 + t + ... + t^{k-1}."""
    if k < 2:
        raise InvalidSpecError(f"[k]_t needs k >= 2, got {k}")
    return [1] * k


def parse_polynomial(text: str) -> list[int]:
    """Parse ``t2+t+1`` / ``t^2 + t + 1`` / ``[5]`` into coefficients, low to high.

    Coefficients are returned unreduced; ``t2`` means t squared.
    """
    text = text.replace(" ", "")
    bracket = re.fullmatch(r"\[(\d+)\]", text)
    if bracket:
        return bracket_polynomial(int(bracket.group(1)))
    if not text:
        raise InvalidSpecError("empty polynomial")

    coeffs: dict[int, int] = {}
    for sign, body in re.findall(r"([+-]?)([^+-]+)", text):
        match = _TERM_PATTERN.match(body)
        if not match or (not match.group(1) and not match.group(2)):
            raise InvalidSpecError(f"cannot parse term '{body}' in polynomial '{text}'")
        coeff = int(match.group(1)) if match.group(1) else 1
        if match.group(2):
            power = int(match.group(3)) if match.group(3) else 1
        else:
            power = 0
        coeffs[power] = coeffs.get(power, 0) + (-coeff if sign == "-" else coeff)

    degree = max(coeffs)
    return [coeffs.get(i, 0) for i in range(degree + 1)]


def format_residue(coords, modulus: int) -> str:
    """Render a coefficient vector as a polynomial label, e.g. ``1+t``."""
    parts = []
    for power, c in enumerate(coords):
        c = int(c) % modulus
        if not c:
            continue
        if power == 0:
            parts.append(str(c))
        else:
            mono = "t" if power == 1 else f"t^{power}"
            parts.append(mono if c == 1 else f"{c}{mono}")
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class AlexanderModule:
    """The module A = Z_m[t^{±1}]/(p(t)) with elements encoded as integers.

    Element index ``sum(c_i * m**i)`` encodes the residue ``sum(c_i t^i)``
    of degree below deg p.
    """
    modulus: int
    coefficients: tuple[int, ...]

    def __post_init__(self):
        if self.modulus < 2:
            raise InvalidSpecError(f"modulus must be at least 2, got {self.modulus}")
        coeffs = [c % self.modulus for c in self.coefficients]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise InvalidSpecError("Alexander polynomial must have degree at least 1")
        if math.gcd(coeffs[-1], self.modulus) != 1:
            raise InvalidSpecError(
                f"leading coefficient {coeffs[-1]} is not invertible mod {self.modulus}"
            )
        if math.gcd(coeffs[0], self.modulus) != 1:
            raise InvalidSpecError(
                f"constant coefficient {coeffs[0]} is not invertible mod {self.modulus}"
            )
        object.__setattr__(self, "coefficients", tuple(coeffs))

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    @property
    def size(self) -> int:
        return self.modulus ** self.degree

    @cached_property
    def t_matrix(self) -> np.ndarray:
        """Companion matrix of multiplication by t on coefficient vectors."""
        m, d = self.modulus, self.degree
        lead_inv = pow(self.coefficients[-1], -1, m)
        monic = [(c * lead_inv) % m for c in self.coefficients]
        mat = np.zeros((d, d), dtype=np.int64)
        for i in range(1, d):
            mat[i, i - 1] = 1
        # t^d = -(monic_0 + ... + monic_{d-1} t^{d-1})
        mat[:, d - 1] = [(-c) % m for c in monic[:d]]
        return mat

    @cached_property
    def elements(self) -> np.ndarray:
        """All coefficient vectors, row i encoding element i."""
        m, d = self.modulus, self.degree
        idx = np.arange(self.size, dtype=np.int64)
        return np.stack([(idx // m ** i) % m for i in range(d)], axis=1)

    def encode(self, coords: np.ndarray) -> np.ndarray:
        weights = self.modulus ** np.arange(self.degree, dtype=np.int64)
        return (coords % self.modulus) @ weights

    def power(self, k: int) -> np.ndarray:
        """Matrix of multiplication by t^k (k >= 0)."""
        result = np.eye(self.degree, dtype=np.int64)
        for _ in range(k):
            result = (result @ self.t_matrix) % self.modulus
        return result

    def operation_table(self) -> np.ndarray:
        """Table of a * b = t a + (1 - t) b."""
        t = self.t_matrix
        one_minus_t = (np.eye(self.degree, dtype=np.int64) - t) % self.modulus
        ta = (self.elements @ t.T) % self.modulus
        sb = (self.elements @ one_minus_t.T) % self.modulus
        combined = ta[:, None, :] + sb[None, :, :]
        return self.encode(combined)

    def labels(self) -> tuple[str, ...]:
        return tuple(format_residue(row, self.modulus) for row in self.elements)

    def image_size(self, matrix: np.ndarray) -> int:
        """Number of distinct values of x -> matrix @ x over the module."""
        images = self.encode((self.elements @ matrix.T) % self.modulus)
        return len(np.unique(images))

    def orbit_count(self) -> int:
        """|A/(1-t)A|, the number of orbits of the Alexander quandle."""
        one_minus_t = (np.eye(self.degree, dtype=np.int64) - self.t_matrix) % self.modulus
        return self.size // self.image_size(one_minus_t)

    def annihilating_k(self) -> int:
        """Least k >= 1 such that (1 - t^k) annihilates A."""
        identity = np.eye(self.degree, dtype=np.int64)
        current = self.t_matrix.copy()
        k = 1
        while not np.array_equal(current % self.modulus, identity):
            current = (current @ self.t_matrix) % self.modulus
            k += 1
        return k

    def value_at_one(self) -> int:
        """p(1) as an integer (before reduction mod m)."""
        return sum(self.coefficients)
