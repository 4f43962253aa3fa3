"""Regularity, C-sets and the regular digraph of ideals.

Two routes decide arcs. The elementwise oracle multiplies actual ring
elements; the fast path uses the local-ring fact that only ideals holding a
unit contain an element regular on a nonzero module, so I -> J exactly when
I is the whole component on every component where J is nonzero.
"""

from __future__ import annotations

import contextlib
from dataclasses import dataclass, field

import numpy as np

from .ring_core import Ideal, ProductRing, RingElement, max_elements


class ArcMismatchError(RuntimeError):
    """Fast-path arcs disagree with the elementwise oracle."""


# test hook: (source_index, target_index) arc to flip after fast construction
_ARC_FAULT: tuple[int, int] | None = None


@contextlib.contextmanager
def inject_arc_fault(src: int, dst: int):
    """Flip one fast-path arc while active (for exercising the verifier)."""
    global _ARC_FAULT
    saved = _ARC_FAULT
    _ARC_FAULT = (src, dst)
    try:
        yield
    finally:
        _ARC_FAULT = saved


# elementwise oracle -------------------------------------------------------------


def is_regular_on(R: ProductRing, r: RingElement, M: Ideal) -> bool:
    """r is M-regular: r*x != 0 for every nonzero x in M."""
    zero = (0,) * len(R.components)
    for x in R.elements():
        if x.coords == zero or not _member(R, M, x):
            continue
        if R.mul(r, x).coords == zero:
            return False
    return True


def _member(R: ProductRing, I: Ideal, x: RingElement) -> bool:
    return all(bool(c.ideals[i][a]) for c, i, a in zip(R.components, I.parts, x.coords))


def regular_mask(R: ProductRing, M: Ideal) -> np.ndarray:
    """Boolean mask over all elements of R (flat order): which are M-regular.

    Builds the element-by-element "product is zero" table for r in R and
    x in M as a Kronecker product of per-component tables.
    """
    kills = np.ones((1, 1), dtype=bool)
    for i, c in zip(M.parts, R.components):
        members = np.flatnonzero(c.ideals[i])
        kills = np.kron(kills, c.mul[:, members] == 0).astype(bool)
    # column 0 is the zero element of M
    kills[:, 0] = False
    return ~kills.any(axis=1)


def contains_regular_element(R: ProductRing, I: Ideal, J: Ideal) -> bool:
    """Elementwise: some element of I is J-regular."""
    return bool((R.element_mask(I) & regular_mask(R, J)).any())


def oracle_arcs(R: ProductRing, vertices: tuple[Ideal, ...] | None = None) -> np.ndarray:
    """Arc matrix over ``vertices`` computed purely from element arithmetic."""
    vs = R.vertices if vertices is None else vertices
    if not vs:
        return np.zeros((0, 0), dtype=bool)
    member = np.array([R.element_mask(I) for I in vs], dtype=np.float32)
    regular = np.array([regular_mask(R, J) for J in vs], dtype=np.float32)
    arcs = (member @ regular.T) > 0
    np.fill_diagonal(arcs, False)
    return arcs


# fast path -------------------------------------------------------------------


def has_regular_element(R: ProductRing, I: Ideal, J: Ideal) -> bool:
    """Support rule: I is whole on every component where J is nonzero."""
    return R.support(J) <= R.unit_support(I)


def arc_fast(R: ProductRing, I: Ideal, J: Ideal) -> bool:
    if I == J:
        raise ValueError("no self-arcs: I and J must differ")
    return has_regular_element(R, I, J)


def _support_bits(R: ProductRing, ideals) -> tuple[np.ndarray, np.ndarray]:
    whole = np.array([c.whole_index for c in R.components])
    parts = np.array([I.parts for I in ideals], dtype=np.int64).reshape(len(ideals), -1)
    weights = np.int64(1) << np.arange(len(R.components), dtype=np.int64)
    supp = ((parts != 0) * weights).sum(axis=1)
    unit = ((parts == whole) * weights).sum(axis=1)
    return supp, unit


def fast_arcs(R: ProductRing, vertices: tuple[Ideal, ...] | None = None) -> np.ndarray:
    vs = R.vertices if vertices is None else vertices
    if not vs:
        return np.zeros((0, 0), dtype=bool)
    supp, unit = _support_bits(R, vs)
    arcs = (supp[None, :] & ~unit[:, None]) == 0
    np.fill_diagonal(arcs, False)
    return arcs


# C-sets ----------------------------------------------------------------------


def _candidates(R: ProductRing, include: Ideal | None) -> list[Ideal]:
    out = list(R.vertices)
    if include is not None:
        out.append(include)
    return out


def c_minus(
    R: ProductRing,
    I: Ideal,
    K: Ideal | None = None,
    *,
    oracle: bool = False,
    allow_trivial: bool = False,
) -> frozenset[Ideal]:
    """Non-trivial J containing an I-regular and a K-regular element (K defaults to 0).

    With ``allow_trivial`` the zero ideal is also a candidate (the whole ring
    always qualifies and is never included).
    """
    K = R.zero if K is None else K
    test = contains_regular_element if oracle else has_regular_element
    pool = _candidates(R, R.zero if allow_trivial else None)
    return frozenset(J for J in pool if test(R, J, I) and test(R, J, K))


def c_plus(
    R: ProductRing,
    I: Ideal,
    K: Ideal | None = None,
    *,
    oracle: bool = False,
    allow_trivial: bool = False,
) -> frozenset[Ideal]:
    """Non-trivial J such that I and K both contain a J-regular element (K defaults to R).

    With ``allow_trivial`` the whole ring is also a candidate (the zero ideal
    always qualifies and is never included).
    """
    K = R.whole if K is None else K
    test = contains_regular_element if oracle else has_regular_element
    pool = _candidates(R, R.whole if allow_trivial else None)
    return frozenset(J for J in pool if test(R, I, J) and test(R, K, J))


# digraph ---------------------------------------------------------------------


@dataclass(eq=False)
class RegularDigraph:
    ring: ProductRing
    vertices: tuple[Ideal, ...]
    arcs: np.ndarray
    validated: bool = False
    index: dict[Ideal, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.arcs.setflags(write=False)
        self.index = {v: i for i, v in enumerate(self.vertices)}

    @property
    def out_degree(self) -> np.ndarray:
        return self.arcs.sum(axis=1)

    @property
    def in_degree(self) -> np.ndarray:
        return self.arcs.sum(axis=0)

    def has_arc(self, I: Ideal, J: Ideal) -> bool:
        return bool(self.arcs[self.index[I], self.index[J]])

    def arc_list(self) -> list[tuple[int, int]]:
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(self.arcs))]


@dataclass(eq=False)
class UnderlyingGraph:
    vertices: tuple[Ideal, ...]
    adjacency: np.ndarray
    index: dict[Ideal, int] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.adjacency.setflags(write=False)
        self.index = {v: i for i, v in enumerate(self.vertices)}

    def __len__(self) -> int:
        return len(self.vertices)

    def neighbors(self, i: int) -> np.ndarray:
        return np.flatnonzero(self.adjacency[i])


def build_digraph(R: ProductRing, validate: bool | None = None) -> RegularDigraph:
    """Arc relation from the fast path.

    ``validate=None`` checks every arc against the elementwise oracle when
    the ring is within the element cap; a mismatch raises ArcMismatchError.
    """
    arcs = fast_arcs(R)
    if _ARC_FAULT is not None and arcs.size:
        src, dst = _ARC_FAULT
        arcs[src, dst] = not arcs[src, dst]
    if validate is None:
        validate = R.order <= max_elements()
    if validate and arcs.size:
        expected = oracle_arcs(R)
        if not np.array_equal(arcs, expected):
            bad = list(zip(*np.nonzero(arcs != expected)))[:5]
            raise ArcMismatchError(f"fast arcs disagree with oracle at {bad}")
    return RegularDigraph(R, R.vertices, arcs, validated=bool(validate))


def underlying(g: RegularDigraph) -> UnderlyingGraph:
    return UnderlyingGraph(g.vertices, g.arcs | g.arcs.T)


def is_transitive(arcs: np.ndarray) -> bool:
    """Every two-step path I -> J -> K (with I != K) has the arc I -> K."""
    a = arcs.astype(np.float32)
    two = (a @ a) > 0
    np.fill_diagonal(two, False)
    return not (two & ~arcs).any()
