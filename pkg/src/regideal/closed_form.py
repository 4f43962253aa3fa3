"""Closed-form distances, eccentricities, radius, diameter and center.

Vertices of a connected non-reduced ring F1 x R2 x R3 (field F1, non-field
local R2, remainder R3, as chosen by the canonical arrangement) fall into
five named vertices

    a = F1 x R2 x 0    b = F1 x 0 x R3    d = 0 x R2 x R3
    u = 0 x R2 x 0     v = 0 x 0 x R3

plus the families C (F1-part whole) and W (F1-part zero). Every distance
and eccentricity is then a case table over the R2/R3 parts, with C-set
emptiness tests evaluated exhaustively inside R3. Reduced rings use the
support model: a vertex is its set of full components.
"""

from __future__ import annotations

import functools
from dataclasses import dataclass
from typing import Iterable

from . import regular_graph as rg
from .graph_metrics import is_connected_predicate
from .ring_core import Ideal, ProductRing, complement, nilradical, restrict, subring


class FormulaError(ValueError):
    """Ring or vertex outside the formulas' domain."""


# identifiers for cases where the closed forms are known not to settle the
# answer or to contradict each other
OPEN_QUESTIONS = {
    "center-two-fields": (
        "The center statement for two field factors and three maximal ideals calls every "
        "vertex central, while the C-eccentricity table gives e = 4 to F1 x I2 x 0 when R3 "
        "is a field and I2 is non-zero and proper."
    ),
    "distance-three-or-four": "The C-to-W distance table leaves 3 versus 4 unresolved.",
}

NAMED = ("a", "b", "d", "u", "v")


@dataclass(frozen=True)
class VertexClass:
    """``tag`` is one of a, b, d, u, v, C, W or ``reduced``.

    ``detail`` holds (R2 part index, R3 ideal) for C and W, and the support
    set (0-based component indices) for reduced vertices.
    """

    tag: str
    detail: tuple | frozenset | None = None


@dataclass(frozen=True)
class DistanceValue:
    exact: int | None = None
    candidates: frozenset[int] = frozenset()
    rule: str = ""

    @classmethod
    def of(cls, k: int, rule: str) -> DistanceValue:
        return cls(exact=k, rule=rule)

    def admits(self, k: int) -> bool:
        return k == self.exact if self.exact is not None else k in self.candidates

    def __str__(self) -> str:
        if self.exact is not None:
            return str(self.exact)
        return "{" + ",".join(map(str, sorted(self.candidates))) + "}"


@dataclass(frozen=True)
class EccentricityValue:
    exact: int | None
    rule: str
    reason: str | None = None  # set when exact is None


def _state(i: int, whole: int) -> str:
    return "0" if i == 0 else ("1" if i == whole else "n")


class Engine:
    """Formula evaluation for one ring against its canonical arrangement."""

    def __init__(self, R: ProductRing):
        if not is_connected_predicate(R):
            raise FormulaError("closed forms need a connected ring (>= 3 maximal ideals and a field factor)")
        self.R = R
        arr = R.arrangement
        self.reduced = arr.reduced
        self.nF = R.n_fields
        if self.reduced:
            return
        self.f1, self.r2, self.rest = arr.field, arr.local, arr.rest
        self.R2 = R.components[self.r2]
        self.R3 = subring(R, self.rest)
        self.R23 = subring(R, (self.r2, *self.rest))
        self.r3_is_field = self.R3.is_field
        self.nil3 = nilradical(self.R3)

    # parts -------------------------------------------------------------------

    def split(self, I: Ideal) -> tuple[int, int, Ideal]:
        return I.parts[self.f1], I.parts[self.r2], restrict(I, self.rest)

    def part23(self, I: Ideal) -> Ideal:
        return restrict(I, (self.r2, *self.rest))

    def s2(self, i2: int) -> str:
        return _state(i2, self.R2.whole_index)

    def s3(self, I3: Ideal) -> str:
        if I3 == self.R3.zero:
            return "0"
        return "1" if I3 == self.R3.whole else "n"

    # C-sets inside R3 ----------------------------------------------------------
    # The distance tables arise from paths whose R3 part must stay proper (C-)
    # or non-zero (C+), not non-trivial; the two readings differ only when R3
    # is a field, so the R3 tests admit the zero ideal (C-) / whole ring (C+).

    @functools.lru_cache(maxsize=None)
    def cm(self, I3: Ideal, K3: Ideal | None = None) -> bool:
        return bool(rg.c_minus(self.R3, I3, K3, allow_trivial=True))

    @functools.lru_cache(maxsize=None)
    def cp(self, I3: Ideal, K3: Ideal | None = None) -> bool:
        return bool(rg.c_plus(self.R3, I3, K3, allow_trivial=True))

    def in_nil3(self, I3: Ideal) -> bool:
        return self.R3.contains(self.nil3, I3)

    # classification ------------------------------------------------------------

    @functools.lru_cache(maxsize=None)
    def classify(self, I: Ideal) -> VertexClass:
        R = self.R
        if not R.is_nontrivial(I):
            raise FormulaError("zero and unit ideals are not vertices")
        if self.reduced:
            return VertexClass("reduced", R.unit_support(I))
        p1, i2, I3 = self.split(I)
        s2, s3 = self.s2(i2), self.s3(I3)
        if p1 != 0:
            named = {("1", "0"): "a", ("0", "1"): "b"}.get((s2, s3))
            return VertexClass(named) if named else VertexClass("C", (i2, I3))
        named = {("1", "1"): "d", ("1", "0"): "u", ("0", "1"): "v"}.get((s2, s3))
        return VertexClass(named) if named else VertexClass("W", (i2, I3))

    # distances -----------------------------------------------------------------

    def distance(self, I: Ideal, J: Ideal) -> DistanceValue:
        if I == J:
            raise FormulaError("distance needs two distinct vertices")
        if self.reduced:
            return DistanceValue.of(self.reduced_distance(I, J), "support-model")
        ci, cj = self.classify(I), self.classify(J)
        rank = {t: k for k, t in enumerate((*NAMED, "C", "W"))}
        if rank[ci.tag] > rank[cj.tag]:
            I, J, ci, cj = J, I, cj, ci
        if ci.tag in NAMED and cj.tag in NAMED:
            return DistanceValue.of(_NAMED_TABLE[frozenset((ci.tag, cj.tag))], "named-pairs")
        if ci.tag in NAMED and cj.tag == "C":
            return self._named_to_c(ci.tag, *cj.detail)
        if ci.tag in NAMED and cj.tag == "W":
            return self._named_to_w(ci.tag, *cj.detail)
        if ci.tag == cj.tag == "C":
            return self._same_family(I, J, zero_side=True)
        if ci.tag == cj.tag == "W":
            return self._same_family(I, J, zero_side=False)
        return self._c_to_w(I, J, *ci.detail, *cj.detail)

    def _named_to_c(self, tag: str, i2: int, I3: Ideal) -> DistanceValue:
        s2, s3 = self.s2(i2), self.s3(I3)
        if tag == "a":
            return DistanceValue.of(1 if (s3 == "0" or s2 == "1") else 2, "a-to-C")
        if tag == "b":
            return DistanceValue.of(1 if (s2 == "0" or s3 == "1") else 2, "b-to-C")
        if tag == "u":
            if s2 == "1":
                return DistanceValue.of(1, "C-to-u")
            return DistanceValue.of(2 if self.cm(I3) else 3, "C-to-u")
        if tag == "v":
            if s3 == "1":
                return DistanceValue.of(1, "C-to-v")
            return DistanceValue.of(2 if (s2 == "0" or self.cp(I3)) else 3, "C-to-v")
        # d
        if s2 == "1" or s3 == "1" or self.cp(I3):
            return DistanceValue.of(2, "C-to-d")
        if s2 == "0" or s3 == "0" or self.cm(I3):
            return DistanceValue.of(3, "C-to-d")
        return DistanceValue.of(4, "C-to-d")

    def _named_to_w(self, tag: str, k2: int, K3: Ideal) -> DistanceValue:
        s2, s3 = self.s2(k2), self.s3(K3)
        if tag == "a":
            if s3 == "0":
                return DistanceValue.of(1, "a-to-W")
            return DistanceValue.of(2 if (s2 == "1" or self.cm(K3)) else 3, "a-to-W")
        if tag == "b":
            if s2 == "0":
                return DistanceValue.of(1, "b-to-W")
            return DistanceValue.of(2 if self.cp(K3) else 3, "b-to-W")
        if tag == "u":
            return DistanceValue.of(1 if (s2 == "1" or s3 == "0") else 2, "u-to-W")
        if tag == "v":
            return DistanceValue.of(1 if (s2 == "0" or s3 == "1") else 2, "v-to-W")
        return DistanceValue.of(1, "d-to-W")

    def _same_family(self, I: Ideal, J: Ideal, zero_side: bool) -> DistanceValue:
        R23 = self.R23
        A, B = self.part23(I), self.part23(J)
        extreme = R23.zero if zero_side else R23.whole
        rule = "C-to-C" if zero_side else "W-to-W"
        if A == extreme or B == extreme:
            return DistanceValue.of(1, rule)
        adjacent = rg.has_regular_element(R23, A, B) or rg.has_regular_element(R23, B, A)
        return DistanceValue.of(1 if adjacent else 2, rule)

    def _c_to_w(self, I: Ideal, J: Ideal, i2: int, I3: Ideal, k2: int, K3: Ideal) -> DistanceValue:
        if rg.has_regular_element(self.R23, self.part23(I), self.part23(J)):
            return DistanceValue.of(1, "C-to-W")
        s_i, s_k = self.s2(i2), self.s2(k2)
        if (s_i == s_k == "0") or (s_i == s_k == "1") or self.cm(I3, K3) or self.cp(I3, K3):
            return DistanceValue.of(2, "C-to-W")
        if s_i == "n" and s_k == "n" and not (
            self.cp(I3) or self.cm(I3) or self.cp(K3) or self.cm(K3)
        ):
            return DistanceValue.of(5, "C-to-W")
        return DistanceValue(candidates=frozenset((3, 4)), rule="C-to-W")

    def reduced_distance(self, I: Ideal, J: Ideal) -> int:
        if len(self.R.components) < 3:
            raise FormulaError("support model needs at least three components")
        if I == J:
            raise FormulaError("distance needs two distinct vertices")
        A, B = self.R.unit_support(I), self.R.unit_support(J)
        if A < B or B < A:
            return 1
        if A & B or len(A | B) < len(self.R.components):
            return 2
        return 3

    # eccentricity --------------------------------------------------------------

    @functools.lru_cache(maxsize=None)
    def eccentricity(self, I: Ideal) -> EccentricityValue:
        c = self.classify(I)
        if self.reduced:
            return EccentricityValue(3, "support-model")
        if self.nF >= 3:
            return EccentricityValue(3, "three-fields")
        if c.tag in ("a", "b", "u", "v"):
            return EccentricityValue(3, "named")
        if c.tag == "d":
            return EccentricityValue(3 if self.nF >= 2 else 4, "named-d")
        if c.tag == "C":
            return self._ecc_c(I, *c.detail)
        return self._ecc_w(I, *c.detail)

    def _ecc_c(self, I: Ideal, i2: int, I3: Ideal) -> EccentricityValue:
        s2, s3 = self.s2(i2), self.s3(I3)
        if s2 == "1":
            return EccentricityValue(3, "C:full-R2")
        if s3 == "0":
            three = self.nF == 2 and (not self.r3_is_field or s2 == "0")
            return EccentricityValue(3 if three else 4, "C:zero-R3")
        if s2 == "0":  # I3 non-trivial here
            three = self.nF == 2 or not self.in_nil3(I3)
            return EccentricityValue(3 if three else 4, "C:zero-R2")
        if s3 == "1":
            return EccentricityValue(3, "C:full-R3")
        # both parts non-trivial
        if self.nF == 1:
            if self.cp(I3):
                return EccentricityValue(3, "C:both-nontrivial")
            return self._not_three(I, "C:both-nontrivial")
        if self._field_zero_rest_nontrivial(I3, field_full=False):
            return self._not_three(I, "C:both-nontrivial")
        return EccentricityValue(3, "C:both-nontrivial")

    def _ecc_w(self, I: Ideal, k2: int, K3: Ideal) -> EccentricityValue:
        s2, s3 = self.s2(k2), self.s3(K3)
        if s2 == "0":
            return EccentricityValue(3, "W:zero-R2")
        if s3 == "1":  # K2 non-trivial here
            three = self.nF == 2 and not self.r3_is_field
            return EccentricityValue(3 if three else 4, "W:full-R3")
        if s2 == "1":
            three = self.nF == 2 or self.cm(K3)
            return EccentricityValue(3 if three else 4, "W:full-R2")
        if s3 == "0":
            return EccentricityValue(3, "W:zero-R3")
        if self.nF == 1:
            if self.cm(K3):
                return EccentricityValue(3, "W:both-nontrivial")
            return self._not_three(I, "W:both-nontrivial")
        if self._field_zero_rest_nontrivial(K3, field_full=True):
            return self._not_three(I, "W:both-nontrivial")
        return EccentricityValue(3, "W:both-nontrivial")

    def _field_zero_rest_nontrivial(self, I3: Ideal, field_full: bool) -> bool:
        # R3 = T3 x T4 x ... with T3 the second field (first in the arrangement)
        comps = self.R3.components
        head = I3.parts[0]
        if head != (comps[0].whole_index if field_full else 0):
            return False
        return all(0 < q < c.whole_index for q, c in zip(I3.parts[1:], comps[1:]))

    def _not_three(self, I: Ideal, rule: str) -> EccentricityValue:
        """e != 3 is known; settle the value from the distance tables."""
        exact = [0]
        open_pair = False
        for J in self.R.vertices:
            if J == I:
                continue
            d = self.distance(I, J)
            if d.exact is not None:
                exact.append(d.exact)
            else:
                open_pair = True
        top = max(exact)
        if open_pair:
            return EccentricityValue(max(top, 4), rule)
        if top == 3:
            return EccentricityValue(None, rule, reason="tables-inconsistent")
        return EccentricityValue(top, rule)

    # global invariants -----------------------------------------------------------

    def diameter(self) -> int:
        if self.nF >= 3:
            return 3
        return 4 if self.nF == 2 else 5

    def radius(self) -> int:
        return 3

    def center(self) -> frozenset[Ideal]:
        R = self.R
        verts = R.vertices
        if self.reduced or self.nF >= 3:
            return frozenset(verts)
        if self.nF == 1:
            X = {
                I for I in verts
                if self.split(I)[0] != 0
                and (self.s2(self.split(I)[1]) == "1" or not self.in_nil3(self.split(I)[2]))
            }
            return frozenset(X | {complement(R, I) for I in X})
        if R.max_ideal_count == 3:
            return frozenset(verts)
        out = set()
        for I in verts:
            p1, i2, I3 = self.split(I)
            bad = self.s2(i2) == "n" and self._field_zero_rest_nontrivial(I3, field_full=p1 == 0)
            if not bad:
                out.add(I)
        return frozenset(out)

    def center_from_eccentricities(self) -> frozenset[Ideal] | None:
        ecc = {I: self.eccentricity(I).exact for I in self.R.vertices}
        if any(e is None for e in ecc.values()):
            return None
        low = min(ecc.values())
        return frozenset(I for I, e in ecc.items() if e == low)


_NAMED_TABLE = {
    frozenset(("a", "b")): 2, frozenset(("u", "v")): 2,
    frozenset(("a", "d")): 2, frozenset(("b", "d")): 2,
    frozenset(("a", "u")): 1, frozenset(("b", "v")): 1,
    frozenset(("d", "u")): 1, frozenset(("d", "v")): 1,
    frozenset(("a", "v")): 3, frozenset(("b", "u")): 3,
}


@functools.lru_cache(maxsize=64)
def engine(R: ProductRing) -> Engine:
    return Engine(R)


def classify_vertex(R: ProductRing, I: Ideal) -> VertexClass:
    return engine(R).classify(I)


def formula_distance(R: ProductRing, I: Ideal, J: Ideal) -> DistanceValue:
    if R.is_reduced:
        raise FormulaError("reduced ring: use reduced_distance")
    return engine(R).distance(I, J)


def reduced_distance(R: ProductRing, I: Ideal, J: Ideal) -> int:
    if not R.is_reduced:
        raise FormulaError("reduced_distance needs a product of fields")
    if len(R.components) < 3:
        raise FormulaError("support model needs at least three components")
    return engine(R).reduced_distance(I, J)


def formula_eccentricity(R: ProductRing, I: Ideal) -> EccentricityValue:
    if R.is_reduced:
        raise FormulaError("reduced ring: every vertex has eccentricity 3")
    return engine(R).eccentricity(I)


def formula_diameter(R: ProductRing) -> int:
    return engine(R).diameter()


def formula_radius(R: ProductRing) -> int:
    return engine(R).radius()


def formula_center(R: ProductRing) -> frozenset[Ideal]:
    return engine(R).center()


def distance_table(R: ProductRing, vertices: Iterable[Ideal] | None = None) -> dict:
    """Formula distance for every unordered vertex pair, keyed by index pair."""
    vs = list(R.vertices if vertices is None else vertices)
    eng = engine(R)
    out = {}
    for i, I in enumerate(vs):
        for j in range(i + 1, len(vs)):
            out[(i, j)] = eng.distance(I, vs[j])
    return out
