"""Finite commutative Artinian rings presented as products of finite local rings.

Local factors carry dense addition/multiplication tables over element
indices ``0..order-1``; the zero element always has index 0. Ideals of a
local ring are kept as boolean membership masks, sorted by (size, bitmask).
Ideals of a product are tuples of component ideal indices.
"""

from __future__ import annotations

import functools
import itertools
import json
import os
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

DEFAULT_MAX_ELEMENTS = 4096

# kinds of local ring presentation
PRIME_FIELD = "prime-field"
INTEGERS_MOD = "integers-mod"
TRUNCATED_POLY = "truncated-poly"
TABLE = "table"


class RingError(ValueError):
    """Invalid ring descriptor or table."""


def max_elements() -> int:
    """Element cap, overridable through ``REGIDEAL_MAX_ELEMENTS``."""
    raw = os.environ.get("REGIDEAL_MAX_ELEMENTS")
    if raw is None:
        return DEFAULT_MAX_ELEMENTS
    try:
        cap = int(raw)
    except ValueError:
        raise RingError(f"REGIDEAL_MAX_ELEMENTS must be an integer, got {raw!r}") from None
    if cap < 1:
        raise RingError("REGIDEAL_MAX_ELEMENTS must be positive")
    return cap


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def prime_power(n: int) -> tuple[int, int] | None:
    """Return ``(p, k)`` with ``n == p**k``, or None."""
    if n < 2:
        return None
    p = next(d for d in itertools.count(2) if n % d == 0)
    k = 0
    while n % p == 0:
        n //= p
        k += 1
    return (p, k) if n == 1 else None


@dataclass(frozen=True)
class LocalSpec:
    """Descriptor of a local ring.

    ``kind`` selects the presentation:

    * ``prime-field``: F_p (``exponent`` is 1)
    * ``integers-mod``: Z/p^k
    * ``truncated-poly``: F_p[x]/(x^k)
    * ``table``: either the square-zero algebra F_p[v1..vd]/(v1..vd)^2 when
      ``variables`` is set, or a table loaded from ``path``
    """

    kind: str
    p: int = 0
    exponent: int = 1
    variables: tuple[str, ...] = ()
    path: str | None = None

    @property
    def order(self) -> int | None:
        if self.kind in (PRIME_FIELD, INTEGERS_MOD, TRUNCATED_POLY):
            return self.p**self.exponent
        if self.variables:
            return self.p ** (1 + len(self.variables))
        return None


@dataclass(eq=False)
class LocalRing:
    spec: LocalSpec
    add: np.ndarray
    mul: np.ndarray
    one: int
    labels: tuple[str, ...] | None = None
    # derived in __post_init__
    units: np.ndarray = field(init=False, repr=False)
    ideals: tuple[np.ndarray, ...] = field(init=False, repr=False)

    def __post_init__(self) -> None:
        self.add.setflags(write=False)
        self.mul.setflags(write=False)
        self.units = (self.mul == self.one).any(axis=1)
        self.units.setflags(write=False)
        self.ideals = tuple(_enumerate_ideals(self.add, self.mul))
        for mask in self.ideals:
            mask.setflags(write=False)

    @property
    def order(self) -> int:
        return self.add.shape[0]

    @property
    def kind(self) -> str:
        return self.spec.kind

    @property
    def maximal_ideal(self) -> np.ndarray:
        return ~self.units

    @functools.cached_property
    def maximal_index(self) -> int:
        return self.ideal_index(self.maximal_ideal)

    @property
    def is_field(self) -> bool:
        return self.maximal_index == 0

    @property
    def ideal_count(self) -> int:
        return len(self.ideals)

    @property
    def whole_index(self) -> int:
        return len(self.ideals) - 1

    def ideal_index(self, mask: np.ndarray) -> int:
        key = _mask_key(mask)
        for i, m in enumerate(self.ideals):
            if _mask_key(m) == key:
                return i
        raise KeyError("subset is not an ideal of this ring")

    def ideal_size(self, i: int) -> int:
        return int(self.ideals[i].sum())

    def is_nilpotent(self, a: int) -> bool:
        x = a
        for _ in range(self.order):
            if x == 0:
                return True
            x = int(self.mul[x, a])
        return x == 0

    def generated_ideal(self, gens: Iterable[int]) -> int:
        """Index of the ideal generated by ``gens``."""
        mask = np.zeros(self.order, dtype=bool)
        mask[0] = True
        for g in gens:
            mask = _ideal_sum(self.add, mask, _principal(self.mul, g))
        return self.ideal_index(mask)

    def annihilator(self, i: int) -> int:
        members = np.flatnonzero(self.ideals[i])
        ann = (self.mul[:, members] == 0).all(axis=1)
        return self.ideal_index(ann)

    def generators(self, i: int) -> list[int]:
        """Greedy generating set in element order."""
        target = self.ideals[i]
        current = np.zeros(self.order, dtype=bool)
        current[0] = True
        gens: list[int] = []
        for a in np.flatnonzero(target):
            if current[a]:
                continue
            gens.append(int(a))
            current = _ideal_sum(self.add, current, _principal(self.mul, int(a)))
            if (current == target).all():
                break
        return gens

    # element literals ------------------------------------------------------

    def format_element(self, a: int) -> str:
        s = self.spec
        if self.labels is not None:
            return self.labels[a]
        if s.kind in (PRIME_FIELD, INTEGERS_MOD):
            return str(a)
        if s.kind == TRUNCATED_POLY:
            names = ["1", "x"] + [f"x^{e}" for e in range(2, s.exponent)]
        else:
            names = ["1", *s.variables]
        coeffs = _digits(a, s.p, len(names))
        terms = []
        for c, name in zip(coeffs, names):
            if c == 0:
                continue
            if name == "1":
                terms.append(str(c))
            else:
                terms.append(name if c == 1 else f"{c}{name}")
        return "+".join(terms) if terms else "0"

    def parse_element(self, text: str) -> int:
        s = self.spec
        text = text.replace(" ", "")
        if self.labels is not None:
            if text in self.labels:
                return self.labels.index(text)
            if text.isdigit() and int(text) < self.order:
                return int(text)
            raise RingError(f"unknown element {text!r}")
        if s.kind in (PRIME_FIELD, INTEGERS_MOD):
            try:
                return int(text) % self.order
            except ValueError:
                raise RingError(f"expected an integer, got {text!r}") from None
        if s.kind == TRUNCATED_POLY:
            names = {"x": 1}
            width = s.exponent
        else:
            names = {v: i + 1 for i, v in enumerate(s.variables)}
            width = 1 + len(s.variables)
        coeffs = [0] * width
        for term in text.split("+"):
            coef, var, exp = _parse_term(term)
            if var is None:
                pos = 0
            elif var not in names:
                raise RingError(f"unknown variable {var!r} in {text!r}")
            elif s.kind == TRUNCATED_POLY:
                pos = exp
            elif exp != 1:
                pos = width  # square of a variable is zero
            else:
                pos = names[var]
            if pos < width:
                coeffs[pos] = (coeffs[pos] + coef) % s.p
        return sum(c * s.p**i for i, c in enumerate(coeffs))

    def __repr__(self) -> str:
        return f"LocalRing({self.spec.kind}, order={self.order}, ideals={self.ideal_count})"


def _parse_term(term: str) -> tuple[int, str | None, int]:
    if not term:
        raise RingError("empty term")
    i = 0
    while i < len(term) and term[i].isdigit():
        i += 1
    coef = int(term[:i]) if i else 1
    rest = term[i:].lstrip("*")
    if not rest:
        if not i:
            raise RingError(f"bad term {term!r}")
        return coef, None, 0
    var, _, exp = rest.partition("^")
    if len(var) != 1 or not var.isalpha():
        raise RingError(f"bad term {term!r}")
    if exp and not exp.isdigit():
        raise RingError(f"bad exponent in {term!r}")
    return coef, var, int(exp) if exp else 1


def _digits(a: int, base: int, width: int) -> list[int]:
    out = []
    for _ in range(width):
        out.append(a % base)
        a //= base
    return out


def _mask_key(mask: np.ndarray) -> tuple[int, int]:
    # (size, bitmask) with element i contributing bit i
    bits = int.from_bytes(np.packbits(mask, bitorder="little").tobytes(), "little")
    return int(mask.sum()), bits


def _principal(mul: np.ndarray, a: int) -> np.ndarray:
    mask = np.zeros(mul.shape[0], dtype=bool)
    mask[mul[a]] = True
    return mask


def _ideal_sum(add: np.ndarray, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    out = np.zeros(add.shape[0], dtype=bool)
    out[add[np.ix_(np.flatnonzero(a), np.flatnonzero(b))].ravel()] = True
    return out


def _enumerate_ideals(add: np.ndarray, mul: np.ndarray) -> list[np.ndarray]:
    """All ideals: principal ideals closed under pairwise sums to a fixpoint."""
    found: dict[tuple[int, int], np.ndarray] = {}
    for a in range(add.shape[0]):
        m = _principal(mul, a)
        found.setdefault(_mask_key(m), m)
    frontier = list(found.values())
    while frontier:
        current = list(found.values())
        fresh = []
        for a in frontier:
            for b in current:
                s = _ideal_sum(add, a, b)
                key = _mask_key(s)
                if key not in found:
                    found[key] = s
                    fresh.append(s)
        frontier = fresh
    return [found[k] for k in sorted(found)]


# construction ----------------------------------------------------------------


def _check_cap(order: int, cap: int | None) -> None:
    cap = max_elements() if cap is None else cap
    if order > cap:
        raise RingError(f"ring of order {order} exceeds the element cap {cap}")


def make_local_ring(spec: LocalSpec, cap: int | None = None) -> LocalRing:
    """Build the local ring described by ``spec``."""
    kind = spec.kind
    if kind == TABLE and not spec.variables:
        if spec.path is None:
            raise RingError("table-presented ring needs a path or variables")
        return load_table_ring(spec.path, cap=cap)
    if not is_prime(spec.p):
        raise RingError(f"{spec.p} is not prime")
    if spec.exponent < 1:
        raise RingError("exponent must be at least 1")
    if kind == PRIME_FIELD and spec.exponent != 1:
        raise RingError("only prime fields F_p are supported")
    _check_cap(spec.order, cap)

    if kind in (PRIME_FIELD, INTEGERS_MOD):
        n = spec.order
        r = np.arange(n, dtype=np.int64)
        add = (r[:, None] + r[None, :]) % n
        mul = (r[:, None] * r[None, :]) % n
        return LocalRing(spec, add.astype(np.int32), mul.astype(np.int32), one=1 % n)

    if kind == TRUNCATED_POLY:
        width = spec.exponent
        coeff = np.array([_digits(a, spec.p, width) for a in range(spec.order)], dtype=np.int64)
        add_c = (coeff[:, None, :] + coeff[None, :, :]) % spec.p
        mul_c = np.zeros_like(add_c)
        for i in range(width):
            for j in range(width - i):
                mul_c[:, :, i + j] += coeff[:, None, i] * coeff[None, :, j]
        mul_c %= spec.p
        weights = spec.p ** np.arange(width, dtype=np.int64)
        add = (add_c * weights).sum(axis=2)
        mul = (mul_c * weights).sum(axis=2)
        return LocalRing(spec, add.astype(np.int32), mul.astype(np.int32), one=1)

    if kind == TABLE:
        # square-zero algebra F_p[v1..vd]/(v1..vd)^2
        width = 1 + len(spec.variables)
        coeff = np.array([_digits(a, spec.p, width) for a in range(spec.order)], dtype=np.int64)
        add_c = (coeff[:, None, :] + coeff[None, :, :]) % spec.p
        mul_c = np.empty_like(add_c)
        mul_c[:, :, 0] = coeff[:, None, 0] * coeff[None, :, 0]
        mul_c[:, :, 1:] = coeff[:, None, :1] * coeff[None, :, 1:] + coeff[:, None, 1:] * coeff[None, :, :1]
        mul_c %= spec.p
        weights = spec.p ** np.arange(width, dtype=np.int64)
        add = (add_c * weights).sum(axis=2)
        mul = (mul_c * weights).sum(axis=2)
        return LocalRing(spec, add.astype(np.int32), mul.astype(np.int32), one=1)

    raise RingError(f"unknown local ring kind {kind!r}")


def table_ring(
    add: Sequence[Sequence[int]],
    mul: Sequence[Sequence[int]],
    one: int = 1,
    labels: Sequence[str] | None = None,
    path: str | None = None,
    cap: int | None = None,
) -> LocalRing:
    """Validate and wrap explicit tables. Element 0 must be the additive identity."""
    a = np.asarray(add, dtype=np.int32)
    m = np.asarray(mul, dtype=np.int32)
    n = a.shape[0]
    if a.shape != (n, n) or m.shape != (n, n) or n < 1:
        raise RingError("tables must be square and of equal size")
    _check_cap(n, cap)
    if a.min() < 0 or a.max() >= n or m.min() < 0 or m.max() >= n:
        raise RingError("table entries out of range")
    if labels is not None and (len(labels) != n or len(set(labels)) != n):
        raise RingError("labels must be distinct, one per element")
    _check_axioms(a, m, one)
    ring = LocalRing(
        LocalSpec(TABLE, path=path), a, m, one=one, labels=tuple(labels) if labels else None
    )
    non_units = np.flatnonzero(~ring.units)
    if not any(_mask_key(ideal) == _mask_key(~ring.units) for ideal in ring.ideals):
        raise RingError(f"ring is not local: non-units {non_units.tolist()} do not form an ideal")
    return ring


def _check_axioms(a: np.ndarray, m: np.ndarray, one: int) -> None:
    n = a.shape[0]
    r = np.arange(n)
    if not (a[0] == r).all():
        raise RingError("element 0 is not an additive identity")
    if not (a == a.T).all() or not (m == m.T).all():
        raise RingError("operations are not commutative")
    if not (m[one] == r).all():
        raise RingError(f"element {one} is not a multiplicative identity")
    if not (a == 0).any(axis=1).all():
        raise RingError("missing additive inverses")
    # associativity and distributivity, one slab at a time
    for x in range(n):
        if not (a[a[x]] == a[x][a]).all():
            raise RingError("addition is not associative")
        if not (m[m[x]] == m[x][m]).all():
            raise RingError("multiplication is not associative")
        if not (m[x][a] == a[np.ix_(m[x], m[x])]).all():
            raise RingError("multiplication does not distribute over addition")


def load_table_ring(path: str | os.PathLike, cap: int | None = None) -> LocalRing:
    """Load a table-presented local ring from JSON.

    Expected keys: ``add`` and ``mul`` (square integer tables), optional
    ``one`` (default 1) and ``labels`` (element literals).
    """
    data = json.loads(Path(path).read_text())
    try:
        return table_ring(
            data["add"], data["mul"], one=data.get("one", 1), labels=data.get("labels"),
            path=str(path), cap=cap,
        )
    except KeyError as exc:
        raise RingError(f"{path}: missing key {exc}") from None


# products --------------------------------------------------------------------


@dataclass(frozen=True)
class Ideal:
    """Ideal of a product ring as per-component ideal indices."""

    parts: tuple[int, ...]

    def __iter__(self):
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __getitem__(self, i):
        return self.parts[i]


@dataclass(frozen=True)
class RingElement:
    coords: tuple[int, ...]


@dataclass(frozen=True)
class Arrangement:
    """Which components play the field factor, the local factor and the rest.

    ``field`` and ``local`` are component indices (None when absent);
    ``rest`` lists the remaining components in the order used for the
    remainder factor.
    """

    reduced: bool
    field: int | None
    local: int | None
    rest: tuple[int, ...]


@dataclass(eq=False)
class ProductRing:
    components: tuple[LocalRing, ...]
    arrangement: Arrangement = field(init=False)

    def __post_init__(self) -> None:
        self.components = tuple(self.components)
        self.arrangement = canonicalize_arrangement(self)

    @property
    def n_fields(self) -> int:
        return sum(c.is_field for c in self.components)

    @property
    def max_ideal_count(self) -> int:
        return len(self.components)

    @property
    def is_reduced(self) -> bool:
        return all(c.is_field for c in self.components)

    @property
    def is_field(self) -> bool:
        return len(self.components) == 1 and self.components[0].is_field

    @property
    def order(self) -> int:
        return int(np.prod([c.order for c in self.components], dtype=object))

    @property
    def zero(self) -> Ideal:
        return Ideal((0,) * len(self.components))

    @property
    def whole(self) -> Ideal:
        return Ideal(tuple(c.whole_index for c in self.components))

    @functools.cached_property
    def ideals(self) -> tuple[Ideal, ...]:
        return tuple(
            Ideal(p) for p in itertools.product(*(range(c.ideal_count) for c in self.components))
        )

    @functools.cached_property
    def vertices(self) -> tuple[Ideal, ...]:
        return tuple(I for I in self.ideals if self.is_nontrivial(I))

    def is_nontrivial(self, I: Ideal) -> bool:
        return I != self.zero and I != self.whole

    def support(self, I: Ideal) -> frozenset[int]:
        """Components where ``I`` is nonzero."""
        return frozenset(k for k, i in enumerate(I.parts) if i != 0)

    def unit_support(self, I: Ideal) -> frozenset[int]:
        """Components where ``I`` is the whole component."""
        return frozenset(
            k for k, (i, c) in enumerate(zip(I.parts, self.components)) if i == c.whole_index
        )

    def contains(self, I: Ideal, J: Ideal) -> bool:
        """True iff J is a subset of I."""
        return all(
            not (c.ideals[j] & ~c.ideals[i]).any()
            for i, j, c in zip(I.parts, J.parts, self.components)
        )

    def size(self, I: Ideal) -> int:
        return int(np.prod([c.ideal_size(i) for i, c in zip(I.parts, self.components)], dtype=object))

    # element level -----------------------------------------------------------

    @functools.cached_property
    def shape(self) -> tuple[int, ...]:
        return tuple(c.order for c in self.components)

    def elements(self) -> Iterable[RingElement]:
        for coords in itertools.product(*(range(n) for n in self.shape)):
            yield RingElement(coords)

    def flat_index(self, r: RingElement) -> int:
        return int(np.ravel_multi_index(r.coords, self.shape))

    def element_mask(self, I: Ideal) -> np.ndarray:
        """Membership of ``I`` over all elements in flat (row-major) order."""
        mask = np.ones(1, dtype=bool)
        for i, c in zip(I.parts, self.components):
            mask = np.kron(mask, c.ideals[i]).astype(bool)
        return mask

    def mul(self, r: RingElement, s: RingElement) -> RingElement:
        return RingElement(tuple(int(c.mul[a, b]) for c, a, b in zip(self.components, r.coords, s.coords)))

    def add(self, r: RingElement, s: RingElement) -> RingElement:
        return RingElement(tuple(int(c.add[a, b]) for c, a, b in zip(self.components, r.coords, s.coords)))

    def is_unit(self, r: RingElement) -> bool:
        return all(bool(c.units[a]) for c, a in zip(self.components, r.coords))

    def describe(self) -> str:
        from .grammar import format_ring

        return format_ring(self)

    def __repr__(self) -> str:
        try:
            return f"ProductRing({self.describe()!r})"
        except Exception:
            return f"ProductRing({len(self.components)} components)"


def make_product(components: Sequence[LocalRing]) -> ProductRing:
    if not components:
        raise RingError("a product needs at least one component")
    return ProductRing(tuple(components))


def enumerate_ideals(R: ProductRing) -> list[Ideal]:
    """Every ideal of R, lexicographic by component ideal indices."""
    return list(R.ideals)


def nilradical(R: ProductRing) -> Ideal:
    return Ideal(tuple(c.maximal_index for c in R.components))


def annihilator(R: ProductRing, I: Ideal) -> Ideal:
    return Ideal(tuple(c.annihilator(i) for i, c in zip(I.parts, R.components)))


def complement(R: ProductRing, I: Ideal) -> Ideal:
    """Swap zero and whole component ideals, keep non-trivial ones."""
    parts = []
    for i, c in zip(I.parts, R.components):
        if i == 0:
            parts.append(c.whole_index)
        elif i == c.whole_index:
            parts.append(0)
        else:
            parts.append(i)
    return Ideal(tuple(parts))


def canonicalize_arrangement(R: ProductRing) -> Arrangement:
    comps = R.components
    fields = [k for k, c in enumerate(comps) if c.is_field]
    locals_ = [k for k, c in enumerate(comps) if not c.is_field]
    if not locals_:
        return Arrangement(True, fields[0] if fields else None, None, tuple(fields[1:]))
    if not fields:
        return Arrangement(False, None, locals_[0], tuple(locals_[1:]))
    f1, r2 = fields[0], locals_[0]
    rest = [k for k in range(len(comps)) if k not in (f1, r2)]
    if len(fields) == 2:
        rest.remove(fields[1])
        rest.insert(0, fields[1])
    return Arrangement(False, f1, r2, tuple(rest))


def subring(R: ProductRing, indices: Sequence[int]) -> ProductRing:
    """Product of the selected components, in the given order."""
    return make_product([R.components[k] for k in indices])


def restrict(I: Ideal, indices: Sequence[int]) -> Ideal:
    return Ideal(tuple(I.parts[k] for k in indices))
