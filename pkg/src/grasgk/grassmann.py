"""Truncated Grassmann algebra E(n) with exact arithmetic and Z2-gradings.

Basis monomials e_{i1}...e_{il} (i1 < ... < il) are stored as bitmasks:
bit i-1 set means generator e_i occurs.  Three gradings are supported,
given by the parity assigned to each generator index:

  kstar(k):  e_i odd for i <= k, even otherwise
  inf:       e_i odd for i odd, even otherwise
  k(k):      e_i even for i <= k, odd otherwise
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Optional

from .scalar import FieldSpec, Scalar

KSTAR = "kstar"
INF = "inf"
K = "k"


class TruncationError(ValueError):
    """Raised when a construction does not fit in E(n)."""


class MismatchError(ValueError):
    """Raised when elements over different fields or truncations are combined."""


@dataclass(frozen=True)
class GradingSpec:
    """One of the three Z2-gradings of E; ``k`` is unused for ``inf``."""

    kind: str
    k: Optional[int] = None

    def __post_init__(self) -> None:
        if self.kind not in (KSTAR, INF, K):
            raise ValueError(f"unknown grading kind {self.kind!r}")
        if self.kind == INF:
            if self.k is not None:
                raise ValueError("inf grading takes no parameter")
        else:
            if self.k is None or self.k < 1:
                raise ValueError(f"{self.kind} grading needs a parameter k >= 1")

    def generator_parity(self, i: int) -> int:
        """Z2-degree of the generator e_i."""
        if self.kind == KSTAR:
            return 1 if i <= self.k else 0
        if self.kind == INF:
            return i % 2
        return 0 if i <= self.k else 1

    def odd_mask(self, n: int) -> int:
        mask = 0
        for i in range(1, n + 1):
            if self.generator_parity(i):
                mask |= 1 << (i - 1)
        return mask

    def label(self) -> str:
        if self.kind == INF:
            return "inf"
        return f"{self.kind}:{self.k}"

    @staticmethod
    def parse(text: str) -> "GradingSpec":
        if text == "inf":
            return GradingSpec(INF)
        if ":" in text:
            kind, _, param = text.partition(":")
            if kind in (KSTAR, K):
                return GradingSpec(kind, int(param))
        raise ValueError(f"bad grading {text!r}; expected kstar:K, inf or k:K")


@dataclass(frozen=True)
class Monomial:
    """Basis monomial of E(n), generators as a bitmask (bit i-1 = e_i)."""

    bits: int
    n: int

    def __post_init__(self) -> None:
        if self.bits >> self.n:
            raise TruncationError(f"monomial uses generators beyond e_{self.n}")

    @property
    def length(self) -> int:
        return self.bits.bit_count()

    def indices(self) -> tuple:
        return tuple(i + 1 for i in range(self.n) if self.bits >> i & 1)

    def sort_key(self):
        return (self.length, self.indices())


def mono_bits(indices: Iterable[int]) -> int:
    bits = 0
    for i in indices:
        if i < 1:
            raise ValueError("generator indices start at 1")
        if bits >> (i - 1) & 1:
            raise ValueError("repeated generator index")
        bits |= 1 << (i - 1)
    return bits


def _merge_sign(a: int, b: int) -> int:
    """Sign (+1/-1) of merging two disjoint ascending monomials a * b."""
    swaps = 0
    rest = b
    while rest:
        low = rest & -rest
        swaps += (a >> low.bit_length()).bit_count()
        rest ^= low
    return -1 if swaps & 1 else 1


def parity(m: Monomial, g: GradingSpec) -> int:
    """Z2-degree of a basis monomial: sum of its generator parities mod 2."""
    return (m.bits & g.odd_mask(m.n)).bit_count() & 1


class GrassmannElement:
    """Sparse exact element of E(n): map from monomial bitmask to Scalar."""

    __slots__ = ("field", "n", "terms")

    def __init__(self, field: FieldSpec, n: int, terms: Optional[Dict[int, Scalar]] = None):
        self.field = field
        self.n = n
        self.terms: Dict[int, Scalar] = {}
        if terms:
            for bits, coef in terms.items():
                if bits >> n:
                    raise TruncationError(f"monomial beyond truncation {n}")
                if not coef.is_zero():
                    self.terms[bits] = coef

    # -- constructors ------------------------------------------------------

    @staticmethod
    def zero(field: FieldSpec, n: int) -> "GrassmannElement":
        return GrassmannElement(field, n)

    @staticmethod
    def one(field: FieldSpec, n: int) -> "GrassmannElement":
        return GrassmannElement(field, n, {0: Scalar.one(field)})

    @staticmethod
    def monomial(field: FieldSpec, n: int, indices: Iterable[int], coef=1) -> "GrassmannElement":
        return GrassmannElement(field, n, {mono_bits(indices): Scalar(field, coef)})

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GrassmannElement)
            and self.field == other.field
            and self.n == other.n
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("GrassmannElement is not hashable")

    def _check(self, other: "GrassmannElement") -> None:
        if self.field != other.field or self.n != other.n:
            raise MismatchError("elements over different fields or truncations")

    # -- linear structure --------------------------------------------------

    def add(self, other: "GrassmannElement") -> "GrassmannElement":
        self._check(other)
        terms = dict(self.terms)
        for bits, coef in other.terms.items():
            acc = terms.get(bits)
            acc = coef if acc is None else acc + coef
            if acc.is_zero():
                terms.pop(bits, None)
            else:
                terms[bits] = acc
        out = GrassmannElement(self.field, self.n)
        out.terms = terms
        return out

    def neg(self) -> "GrassmannElement":
        out = GrassmannElement(self.field, self.n)
        out.terms = {bits: -c for bits, c in self.terms.items()}
        return out

    def sub(self, other: "GrassmannElement") -> "GrassmannElement":
        return self.add(other.neg())

    def scale(self, coef: Scalar) -> "GrassmannElement":
        if coef.is_zero():
            return GrassmannElement.zero(self.field, self.n)
        out = GrassmannElement(self.field, self.n)
        out.terms = {bits: c * coef for bits, c in self.terms.items()}
        return out

    # -- multiplicative structure -----------------------------------------

    def mul(self, other: "GrassmannElement") -> "GrassmannElement":
        self._check(other)
        terms: Dict[int, Scalar] = {}
        for abits, ac in self.terms.items():
            for bbits, bc in other.terms.items():
                if abits & bbits:
                    continue
                bits = abits | bbits
                coef = ac * bc
                if _merge_sign(abits, bbits) < 0:
                    coef = -coef
                acc = terms.get(bits)
                acc = coef if acc is None else acc + coef
                if acc.is_zero():
                    terms.pop(bits, None)
                else:
                    terms[bits] = acc
        out = GrassmannElement(self.field, self.n)
        out.terms = terms
        return out

    def power(self, r: int) -> "GrassmannElement":
        if r < 0:
            raise ValueError("negative power")
        acc = GrassmannElement.one(self.field, self.n)
        for _ in range(r):
            acc = acc.mul(self)
            if acc.is_zero():
                break
        return acc

    def commutator(self, other: "GrassmannElement") -> "GrassmannElement":
        return self.mul(other).sub(other.mul(self))

    # -- grading -----------------------------------------------------------

    def project(self, g: GradingSpec, eps: int) -> "GrassmannElement":
        """Homogeneous component of Z2-degree eps under the grading g."""
        mask = g.odd_mask(self.n)
        out = GrassmannElement(self.field, self.n)
        out.terms = {
            bits: c
            for bits, c in self.terms.items()
            if (bits & mask).bit_count() & 1 == eps
        }
        return out

    def is_homogeneous(self, g: GradingSpec, eps: int) -> bool:
        mask = g.odd_mask(self.n)
        return all((bits & mask).bit_count() & 1 == eps for bits in self.terms)

    # -- serialization -----------------------------------------------------

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (kv[0].bit_count(), Monomial(kv[0], self.n).indices()),
        )

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "char": self.field.characteristic,
            "terms": [
                {"mono": list(Monomial(bits, self.n).indices()), "coef": str(coef)}
                for bits, coef in self.sorted_terms()
            ],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict) -> "GrassmannElement":
        field = FieldSpec(data["char"])
        n = data["n"]
        terms: Dict[int, Scalar] = {}
        for item in data["terms"]:
            terms[mono_bits(item["mono"])] = Scalar(field, Fraction(item["coef"]))
        return GrassmannElement(field, n, terms)

    @staticmethod
    def from_json(text: str) -> "GrassmannElement":
        return GrassmannElement.from_dict(json.loads(text))

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for bits, coef in self.sorted_terms():
            mono = "".join(f"e{i}" for i in Monomial(bits, self.n).indices()) or "1"
            parts.append(f"{coef}*{mono}")
        return " + ".join(parts)


def gr_mul(a: GrassmannElement, b: GrassmannElement) -> GrassmannElement:
    """Exterior product of two elements of E(n)."""
    return a.mul(b)


def gr_power(a: GrassmannElement, r: int) -> GrassmannElement:
    """r-th power; r = 0 gives the unit."""
    return a.power(r)


def homogeneous_project(a: GrassmannElement, g: GradingSpec, eps: int) -> GrassmannElement:
    return a.project(g, eps)


def structured_even_element(
    field: FieldSpec, n: int, a: int, start_index: int
) -> GrassmannElement:
    """Sum of ``a`` disjoint length-2 monomials on consecutive generators.

    This is the central nilpotent shape used by the independence substitutions:
    the result has nilpotency index a + 1 and commutes with everything.
    """
    if a < 0:
        raise ValueError("a must be >= 0")
    if a and start_index + 2 * a - 1 > n:
        raise TruncationError(
            f"need generators up to e_{start_index + 2 * a - 1} but truncation is {n}"
        )
    out = GrassmannElement.zero(field, n)
    for i in range(a):
        lo = start_index + 2 * i
        out = out.add(GrassmannElement.monomial(field, n, (lo, lo + 1)))
    return out


def _random_coef(field: FieldSpec, rng: random.Random) -> Scalar:
    if field.is_modular:
        return Scalar(field, rng.randrange(1, field.characteristic))
    c = rng.randint(1, 10)
    if rng.random() < 0.5:
        c = -c
    return Scalar(field, c)


def random_homogeneous(
    g: GradingSpec,
    eps: int,
    n: int,
    density: int,
    rng_seed,
    field: FieldSpec,
    max_length: int = 4,
    allow_unit: bool = True,
) -> GrassmannElement:
    """Reproducible pseudo-random element of E(n), homogeneous of parity eps.

    Samples ``density`` distinct basis monomials of the requested parity
    (without replacement) with nonzero coefficients.
    """
    rng = random.Random(rng_seed) if not isinstance(rng_seed, random.Random) else rng_seed
    if eps == 1 and g.odd_mask(n) == 0:
        raise ValueError(f"no generators of parity 1 in E({n}) under {g.label()}")
    chosen = set()
    attempts = 0
    limit = 500 * max(density, 1)
    while len(chosen) < density:
        attempts += 1
        if attempts > limit:
            raise ValueError(
                f"could not sample {density} parity-{eps} monomials in E({n})"
            )
        min_len = 0 if (eps == 0 and allow_unit) else 1
        size = rng.randint(min_len, max_length)
        idxs = rng.sample(range(1, n + 1), size) if size else []
        bits = mono_bits(idxs)
        par = sum(g.generator_parity(i) for i in idxs) & 1
        if par == eps:
            chosen.add(bits)
    terms = {bits: _random_coef(field, rng) for bits in sorted(chosen)}
    return GrassmannElement(field, n, terms)
