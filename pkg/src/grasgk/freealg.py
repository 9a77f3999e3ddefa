"""Free Z2-graded associative algebra on y_1..y_m (even) and z_1..z_m (odd).

Words, sparse polynomials, left-normed commutators, the alternating-signed
g-polynomial family, the generating identity lists for the three gradings,
and graded evaluation into E(n).
"""

from __future__ import annotations

import itertools
import json
import random
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .scalar import FieldSpec, Scalar
from .grassmann import (
    GradingSpec,
    GrassmannElement,
    TruncationError,
    random_homogeneous,
    structured_even_element,
)


class ParityError(ValueError):
    """Raised when a substitution violates the grading."""


class TemplateError(ValueError):
    """Raised when a template cannot be instantiated in m variables."""


@dataclass(frozen=True, order=True)
class Variable:
    """Graded variable: kind 'y' has Z2-degree 0, kind 'z' has degree 1."""

    kind: str
    index: int

    def __post_init__(self) -> None:
        if self.kind not in ("y", "z"):
            raise ValueError("variable kind must be 'y' or 'z'")
        if self.index < 1:
            raise ValueError("variable indices start at 1")

    @property
    def parity(self) -> int:
        return 1 if self.kind == "z" else 0

    @property
    def name(self) -> str:
        return f"{self.kind}{self.index}"

    @staticmethod
    def parse(name: str) -> "Variable":
        return Variable(name[0], int(name[1:]))


def y(i: int) -> Variable:
    return Variable("y", i)


def z(i: int) -> Variable:
    return Variable("z", i)


Word = Tuple[Variable, ...]


@dataclass(frozen=True)
class MultiDegree:
    """Exponent vectors of the 2m variables: y-part and z-part."""

    y_exponents: Tuple[int, ...]
    z_exponents: Tuple[int, ...]

    def __post_init__(self) -> None:
        if len(self.y_exponents) != len(self.z_exponents):
            raise ValueError("y and z exponent vectors must have equal length")
        if any(e < 0 for e in self.y_exponents + self.z_exponents):
            raise ValueError("exponents must be nonnegative")

    @property
    def m(self) -> int:
        return len(self.y_exponents)

    @property
    def total(self) -> int:
        return sum(self.y_exponents) + sum(self.z_exponents)

    def degree_of(self, v: Variable) -> int:
        vec = self.y_exponents if v.kind == "y" else self.z_exponents
        return vec[v.index - 1]

    def to_dict(self) -> dict:
        return {"y": list(self.y_exponents), "z": list(self.z_exponents)}

    @staticmethod
    def of_word(word: Word, m: int) -> "MultiDegree":
        ye = [0] * m
        ze = [0] * m
        for v in word:
            (ye if v.kind == "y" else ze)[v.index - 1] += 1
        return MultiDegree(tuple(ye), tuple(ze))


def word_degree(word: Word) -> int:
    """Z2-degree of a word: number of z letters mod 2."""
    return sum(v.parity for v in word) & 1


class FreePoly:
    """Sparse polynomial of the free graded algebra: map word -> Scalar."""

    __slots__ = ("field", "terms")

    def __init__(self, field: FieldSpec, terms: Optional[Dict[Word, Scalar]] = None):
        self.field = field
        self.terms: Dict[Word, Scalar] = {}
        if terms:
            for word, coef in terms.items():
                if not coef.is_zero():
                    self.terms[word] = coef

    @staticmethod
    def zero(field: FieldSpec) -> "FreePoly":
        return FreePoly(field)

    @staticmethod
    def one(field: FieldSpec) -> "FreePoly":
        return FreePoly(field, {(): Scalar.one(field)})

    @staticmethod
    def from_word(field: FieldSpec, word: Sequence[Variable], coef=1) -> "FreePoly":
        return FreePoly(field, {tuple(word): Scalar(field, coef)})

    @staticmethod
    def var(field: FieldSpec, v: Variable) -> "FreePoly":
        return FreePoly.from_word(field, (v,))

    def is_zero(self) -> bool:
        return not self.terms

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, FreePoly)
            and self.field == other.field
            and self.terms == other.terms
        )

    def __hash__(self):
        raise TypeError("FreePoly is not hashable")

    def variables(self) -> List[Variable]:
        seen = set()
        for word in self.terms:
            seen.update(word)
        return sorted(seen)

    # -- linear structure --------------------------------------------------

    def add(self, other: "FreePoly") -> "FreePoly":
        terms = dict(self.terms)
        for word, coef in other.terms.items():
            acc = terms.get(word)
            acc = coef if acc is None else acc + coef
            if acc.is_zero():
                terms.pop(word, None)
            else:
                terms[word] = acc
        out = FreePoly(self.field)
        out.terms = terms
        return out

    def neg(self) -> "FreePoly":
        out = FreePoly(self.field)
        out.terms = {w: -c for w, c in self.terms.items()}
        return out

    def sub(self, other: "FreePoly") -> "FreePoly":
        return self.add(other.neg())

    def scale(self, coef: Scalar) -> "FreePoly":
        if coef.is_zero():
            return FreePoly.zero(self.field)
        out = FreePoly(self.field)
        out.terms = {w: c * coef for w, c in self.terms.items()}
        return out

    # -- multiplicative structure -----------------------------------------

    def mul(self, other: "FreePoly") -> "FreePoly":
        terms: Dict[Word, Scalar] = {}
        for wa, ca in self.terms.items():
            for wb, cb in other.terms.items():
                word = wa + wb
                coef = ca * cb
                acc = terms.get(word)
                acc = coef if acc is None else acc + coef
                if acc.is_zero():
                    terms.pop(word, None)
                else:
                    terms[word] = acc
        out = FreePoly(self.field)
        out.terms = terms
        return out

    # -- serialization -----------------------------------------------------

    def sorted_terms(self):
        return sorted(
            self.terms.items(),
            key=lambda kv: (len(kv[0]), tuple(v.name for v in kv[0])),
        )

    def to_dict(self) -> dict:
        return {
            "terms": [
                {"word": [v.name for v in word], "coef": str(coef)}
                for word, coef in self.sorted_terms()
            ]
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())

    @staticmethod
    def from_dict(data: dict, field: FieldSpec) -> "FreePoly":
        terms: Dict[Word, Scalar] = {}
        for item in data["terms"]:
            word = tuple(Variable.parse(nm) for nm in item["word"])
            terms[word] = Scalar(field, Fraction(item["coef"]))
        return FreePoly(field, terms)

    @staticmethod
    def from_json(text: str, field: FieldSpec) -> "FreePoly":
        return FreePoly.from_dict(json.loads(text), field)

    def __repr__(self) -> str:
        if self.is_zero():
            return "0"
        parts = []
        for word, coef in self.sorted_terms():
            wtxt = "*".join(v.name for v in word) or "1"
            parts.append(f"({coef})*{wtxt}")
        return " + ".join(parts)


def fp_mul(f: FreePoly, g: FreePoly) -> FreePoly:
    """Concatenation product extended bilinearly."""
    return f.mul(g)


def commutator(f: FreePoly, g: FreePoly) -> FreePoly:
    """[f, g] = fg - gf."""
    return f.mul(g).sub(g.mul(f))


def left_normed_commutator(field: FieldSpec, vars_: Sequence[Variable]) -> FreePoly:
    """[v1, v2, ..., vr] with the left-normed convention [[v1,v2],v3]..."""
    if len(vars_) < 2:
        raise ValueError("need at least two entries")
    acc = commutator(FreePoly.var(field, vars_[0]), FreePoly.var(field, vars_[1]))
    for v in vars_[2:]:
        acc = commutator(acc, FreePoly.var(field, v))
    return acc


def commutator_chain(field: FieldSpec, letters: Sequence[Variable]) -> FreePoly:
    """Product [l1,l2][l3,l4]... over an even-length letter sequence."""
    if len(letters) % 2:
        raise ValueError("chain needs an even number of letters")
    acc = FreePoly.one(field)
    for i in range(0, len(letters), 2):
        acc = acc.mul(
            commutator(FreePoly.var(field, letters[i]), FreePoly.var(field, letters[i + 1]))
        )
    return acc


def build_g(field: FieldSpec, vars_: Sequence[Variable]) -> FreePoly:
    """Alternating-signed sum over even subsets T of (-2)^(-|T|/2) f_T.

    f_T is the ascending product of the variables outside T times the
    ascending commutator chain over T.  Multilinear normalization: every
    listed variable occurs exactly once in each word.  With one variable the
    result is the variable itself.
    """
    if not vars_:
        raise ValueError("empty variable list")
    vars_ = sorted(vars_)
    h = len(vars_)
    if h == 1:
        return FreePoly.var(field, vars_[0])
    half = Scalar.of(field, -1, 2)  # (-2)^(-1)
    out = FreePoly.zero(field)
    # subsets in ascending binary order for determinism
    for mask in range(1 << h):
        size = mask.bit_count()
        if size % 2:
            continue
        inside = [vars_[i] for i in range(h) if mask >> i & 1]
        outside = [vars_[i] for i in range(h) if not mask >> i & 1]
        f_t = FreePoly.from_word(field, outside).mul(commutator_chain(field, inside))
        out = out.add(f_t.scale(half ** (size // 2)))
    return out


@dataclass(frozen=True)
class Template:
    """One generating identity, instantiated in concrete variables."""

    name: str
    poly: FreePoly


def _triple_commutator_instances(field: FieldSpec) -> List[Template]:
    out = []
    for kinds in itertools.product("yz", repeat=3):
        vs = [Variable(kind, i + 1) for i, kind in enumerate(kinds)]
        name = "[" + ",".join(v.name for v in vs) + "]"
        out.append(Template(name, left_normed_commutator(field, vs)))
    return out


def identity_templates(
    g: GradingSpec, field: FieldSpec, m: int
) -> Tuple[List[Template], List[str]]:
    """Generating list for the graded identities of E under the grading g.

    Returns (templates, skipped): templates needing more than m variables are
    skipped with a notice instead of failing the whole run.
    """
    templates: List[Template] = []
    skipped: List[str] = []

    def want(name: str, needed_m: int, make) -> None:
        if needed_m > m:
            skipped.append(f"{name} needs m >= {needed_m}")
        else:
            templates.append(Template(name, make()))

    if m >= 3:
        templates.extend(_triple_commutator_instances(field))
    else:
        skipped.append("[x1,x2,x3] needs m >= 3")

    p = field.characteristic
    if g.kind == "kstar":
        k = g.k
        want(
            "z1...z%d" % (k + 1),
            k + 1,
            lambda: FreePoly.from_word(field, [z(i) for i in range(1, k + 2)]),
        )
        if p and p <= k:
            want("z1^%d" % p, 1, lambda: FreePoly.from_word(field, [z(1)] * p))
    elif g.kind == "inf":
        if p:
            want("z1^%d" % p, 1, lambda: FreePoly.from_word(field, [z(1)] * p))
    else:  # deg_k grading
        k = g.k
        if k % 2 == 0:
            ys = [y(i) for i in range(1, k + 1)]
            want(
                "[y1,y2]...[y%d,y%d][y%d,y%d]" % (k - 1, k, k + 1, k + 2),
                k + 2,
                lambda: commutator_chain(field, ys + [y(k + 1), y(k + 2)]),
            )
            want(
                "[y1,y2]...[y%d,y%d][y%d,z1]" % (k - 1, k, k + 1),
                k + 1,
                lambda: commutator_chain(field, ys + [y(k + 1), z(1)]),
            )
        else:
            want(
                "[y1,y2]...[y%d,y%d]" % (k, k + 1),
                k + 1,
                lambda: commutator_chain(field, [y(i) for i in range(1, k + 2)]),
            )
        for l in range(0, k + 1):
            h = k - l + 2
            zs = [z(i) for i in range(1, h + 1)]
            if l % 2 == 0:
                ys = [y(i) for i in range(1, l + 1)]
                want(
                    "g%d(z)[y-chain %d]" % (h, l // 2),
                    max(h, l),
                    lambda zs=zs, ys=ys: build_g(field, zs).mul(
                        commutator_chain(field, ys)
                    ),
                )
            else:
                ys = [y(i) for i in range(1, l + 1)]
                want(
                    "[g%d(z),y1][y-chain %d]" % (h, (l - 1) // 2),
                    max(h, l),
                    lambda zs=zs, ys=ys: commutator(
                        build_g(field, zs), FreePoly.var(field, ys[0])
                    ).mul(commutator_chain(field, ys[1:])),
                )
                want(
                    "g%d(z)[z%d,y1][y-chain %d]" % (h, h + 1, (l - 1) // 2),
                    max(h + 1, l),
                    lambda zs=zs, ys=ys: build_g(field, zs)
                    .mul(commutator(FreePoly.var(field, z(h + 1)), FreePoly.var(field, ys[0])))
                    .mul(commutator_chain(field, ys[1:])),
                )
        if p and p <= k:
            want("z1^%d" % p, 1, lambda: FreePoly.from_word(field, [z(1)] * p))
    return templates, skipped


def evaluate(
    f: FreePoly,
    assignment: Dict[Variable, GrassmannElement],
    g: GradingSpec,
) -> GrassmannElement:
    """Image of f under the graded homomorphism sending each variable to its
    assigned element; every assigned element must be parity-homogeneous."""
    if not assignment:
        some = None
    else:
        some = next(iter(assignment.values()))
    for v, elem in assignment.items():
        if not elem.is_homogeneous(g, v.parity):
            raise ParityError(f"image of {v.name} is not homogeneous of parity {v.parity}")
        if some is not None and (elem.field != some.field or elem.n != some.n):
            raise ParityError("assigned elements disagree on field or truncation")
    if some is None:
        raise ValueError("empty assignment; need at least the target field and truncation")
    field, n = some.field, some.n
    one = GrassmannElement.one(field, n)
    result = GrassmannElement.zero(field, n)
    cache: Dict[Word, GrassmannElement] = {(): one}
    for word, coef in f.sorted_terms():
        # reuse the longest cached prefix of the word
        img = None
        for cut in range(len(word), -1, -1):
            img = cache.get(word[:cut])
            if img is not None:
                break
        for j in range(cut, len(word)):
            v = word[j]
            if v not in assignment:
                raise ParityError(f"no image assigned for {v.name}")
            img = img.mul(assignment[v])
            cache[word[: j + 1]] = img
        result = result.add(img.scale(coef))
    return result


@dataclass
class IdentityReport:
    """Outcome of randomized identity verification."""

    name: str
    grading: str
    characteristic: int
    trials: int
    n: int
    status: str  # PASS or FAIL
    witness: Optional[dict] = None

    def to_dict(self) -> dict:
        out = {
            "template": self.name,
            "grading": self.grading,
            "char": self.characteristic,
            "trials": self.trials,
            "n": self.n,
            "status": self.status,
        }
        if self.witness is not None:
            out["witness"] = self.witness
        return out


def _structured_assignment(
    variables: Sequence[Variable],
    g: GradingSpec,
    field: FieldSpec,
    n: int,
    rng: random.Random,
    richness: int = 2,
) -> Dict[Variable, GrassmannElement]:
    """Proof-shaped substitution: central nilpotent sums plus leading units.

    ``richness`` bounds the number of summands per image; falsifying f needs
    images whose nilpotency index exceeds the degree of f in each variable.

    Generator indices cycle once the pool is exhausted; for identity checks
    reuse across variables is harmless (images stay homogeneous).
    """
    odd = [i for i in range(1, n + 1) if g.generator_parity(i) == 1]
    even = [i for i in range(1, n + 1) if g.generator_parity(i) == 0]
    oc = ec = 0

    def take(par: int) -> int:
        nonlocal oc, ec
        pool = odd if par else even
        if not pool:
            raise ValueError(f"no parity-{par} generators available")
        if par:
            i = pool[oc % len(pool)]
            oc += 1
        else:
            i = pool[ec % len(pool)]
            ec += 1
        return i

    out: Dict[Variable, GrassmannElement] = {}
    for v in variables:
        units = rng.randint(1, max(2, richness))
        elem = GrassmannElement.zero(field, n)
        if v.parity == 1:
            elem = elem.add(GrassmannElement.monomial(field, n, (take(1),)))
            for _ in range(units - 1):
                elem = elem.add(GrassmannElement.monomial(field, n, sorted((take(1), take(0)))))
        else:
            if rng.random() < 0.5:
                elem = elem.add(GrassmannElement.one(field, n))
            elem = elem.add(GrassmannElement.monomial(field, n, (take(0),)))
            for _ in range(units - 1):
                pair = sorted((take(0), take(0))) if len(even) >= 2 else sorted((take(1), take(1)))
                if pair[0] == pair[1]:
                    continue
                elem = elem.add(GrassmannElement.monomial(field, n, pair))
        out[v] = elem.project(g, v.parity)
        if out[v].is_zero():
            out[v] = random_homogeneous(g, v.parity, n, 2, rng, field)
    return out


def verify_identity(
    f: FreePoly,
    g: GradingSpec,
    field: FieldSpec,
    n: int,
    trials: int,
    seed,
    name: str = "",
) -> IdentityReport:
    """Evaluate f at random and structured graded points; PASS iff all zero."""
    variables = f.variables()
    max_len = max((len(word) for word in f.terms), default=0)
    for trial in range(trials):
        rng = random.Random(f"{seed}:{trial}")
        if trial % 3 == 2:
            assignment = _structured_assignment(
                variables, g, field, n, rng, richness=max_len + 1
            )
        else:
            assignment = {
                v: random_homogeneous(g, v.parity, n, rng.randint(1, 3), rng, field)
                for v in variables
            }
        if not variables:
            value = evaluate(
                f, {y(1): GrassmannElement.one(field, n)}, g
            ) if f.terms else GrassmannElement.zero(field, n)
        else:
            value = evaluate(f, assignment, g)
        if not value.is_zero():
            witness = {v.name: assignment[v].to_dict() for v in variables}
            return IdentityReport(
                name or repr(f), g.label(), field.characteristic, trials, n, "FAIL", witness
            )
    return IdentityReport(
        name or repr(f), g.label(), field.characteristic, trials, n, "PASS"
    )


def parse_word(field: FieldSpec, text: str) -> FreePoly:
    """Parse a plain word like ``z1z2`` or ``y1*z2^3`` into a FreePoly."""
    letters: List[Variable] = []
    for chunk in text.replace("*", " ").split():
        i = 0
        while i < len(chunk):
            kind = chunk[i]
            if kind not in "yz":
                raise ValueError(f"bad word {text!r}")
            i += 1
            j = i
            while j < len(chunk) and chunk[j].isdigit():
                j += 1
            if j == i:
                raise ValueError(f"bad word {text!r}")
            idx = int(chunk[i:j])
            exp = 1
            if j < len(chunk) and chunk[j] == "^":
                j += 1
                k_ = j
                while k_ < len(chunk) and chunk[k_].isdigit():
                    k_ += 1
                exp = int(chunk[j:k_])
                j = k_
            letters.extend([Variable(kind, idx)] * exp)
            i = j
    return FreePoly.from_word(field, letters)
