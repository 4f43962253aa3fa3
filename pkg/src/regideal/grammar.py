"""Text forms for rings and ideals.

Ring terms, separated by ``x``::

    F5              prime field
    Z4, Z9, Z8      integers modulo a prime power
    F2[x]/x^3       truncated polynomial ring
    F2[x,y]/(x,y)^2 square-zero algebra
    @path.json      table-presented local ring

Ideals are comma-separated per-component entries: ``0``, ``1`` or a
generator list such as ``(2)`` or ``(x,1+y)``.
"""

from __future__ import annotations

import re
from typing import Sequence

from .ring_core import (
    INTEGERS_MOD,
    PRIME_FIELD,
    TABLE,
    TRUNCATED_POLY,
    Ideal,
    LocalRing,
    LocalSpec,
    ProductRing,
    RingError,
    is_prime,
    make_local_ring,
    make_product,
    prime_power,
)


class ParseError(ValueError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at position {pos}: {text!r}")
        self.text = text
        self.pos = pos


_TERMS = [
    ("trunc", re.compile(r"F(\d+)\[x\]/\(?x\)?\^(\d+)")),
    ("square", re.compile(r"F(\d+)\[([a-z](?:,[a-z])*)\]/\(([a-z](?:,[a-z])*)\)\^2")),
    ("field", re.compile(r"F(\d+)")),
    ("zmod", re.compile(r"Z(\d+)")),
    ("table", re.compile(r"@(\S+)")),
]
_SEP = re.compile(r"\s*[x×*]\s*")


def _local_spec(kind: str, m: re.Match, text: str, pos: int) -> LocalSpec:
    if kind == "table":
        return LocalSpec(TABLE, path=m.group(1))
    n = int(m.group(1))
    if kind == "zmod":
        pk = prime_power(n)
        if pk is None:
            raise ParseError(f"Z{n}: modulus must be a prime power", text, pos)
        return LocalSpec(INTEGERS_MOD, pk[0], pk[1])
    if not is_prime(n):
        raise ParseError(f"F{n}: only prime fields are supported", text, pos)
    if kind == "field":
        return LocalSpec(PRIME_FIELD, n, 1)
    if kind == "trunc":
        return LocalSpec(TRUNCATED_POLY, n, int(m.group(2)))
    vars_ = tuple(m.group(2).split(","))
    if vars_ != tuple(m.group(3).split(",")) or len(set(vars_)) != len(vars_):
        raise ParseError("square-zero algebra must quotient by its own variables", text, pos)
    return LocalSpec(TABLE, n, 1, variables=vars_)


def parse_ring_specs(text: str) -> list[LocalSpec]:
    specs: list[LocalSpec] = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        for kind, rx in _TERMS:
            m = rx.match(text, pos)
            if m:
                break
        else:
            raise ParseError("expected a ring term", text, pos)
        specs.append(_local_spec(kind, m, text, pos))
        pos = m.end()
        while pos < n and text[pos].isspace():
            pos += 1
        if pos == n:
            return specs
        sep = _SEP.match(text, pos)
        if not sep:
            raise ParseError("expected 'x' between ring terms", text, pos)
        pos = sep.end()


def parse_ring(text: str, cap: int | None = None) -> ProductRing:
    specs = parse_ring_specs(text)
    try:
        return make_product([make_local_ring(s, cap=cap) for s in specs])
    except (RingError, OSError) as exc:
        raise ParseError(str(exc), text, 0) from None


def format_local(spec: LocalSpec) -> str:
    if spec.kind == PRIME_FIELD:
        return f"F{spec.p}"
    if spec.kind == INTEGERS_MOD:
        return f"Z{spec.p ** spec.exponent}"
    if spec.kind == TRUNCATED_POLY:
        return f"F{spec.p}[x]/x^{spec.exponent}"
    if spec.variables:
        v = ",".join(spec.variables)
        return f"F{spec.p}[{v}]/({v})^2"
    return f"@{spec.path}"


def format_ring(R: ProductRing | Sequence[LocalRing]) -> str:
    comps = R.components if isinstance(R, ProductRing) else R
    return " x ".join(format_local(c.spec) for c in comps)


# ideals ------------------------------------------------------------------------


def _split_top(text: str, sep: str = ",") -> list[str]:
    parts, depth, start = [], 0, 0
    for i, ch in enumerate(text):
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced ')'", text, i)
        elif ch == sep and depth == 0:
            parts.append(text[start:i])
            start = i + 1
    if depth:
        raise ParseError("unbalanced '('", text, len(text))
    parts.append(text[start:])
    return parts


def parse_component_ideal(ring: LocalRing, entry: str) -> int:
    entry = entry.strip()
    if entry.startswith("(") and entry.endswith(")"):
        gens = [g for g in _split_top(entry[1:-1]) if g.strip()]
    else:
        gens = [entry]
    return ring.generated_ideal(ring.parse_element(g) for g in gens)


def parse_ideal(R: ProductRing, text: str) -> Ideal:
    compact = "".join(text.split())
    entries = _split_top(compact)
    if len(entries) != len(R.components):
        raise ParseError(
            f"expected {len(R.components)} comma-separated entries, got {len(entries)}", text, 0
        )
    parts = []
    offset = 0
    for entry, comp in zip(entries, R.components):
        try:
            parts.append(parse_component_ideal(comp, entry))
        except RingError as exc:
            raise ParseError(str(exc), compact, offset) from None
        offset += len(entry) + 1
    return Ideal(tuple(parts))


def format_component_ideal(ring: LocalRing, i: int) -> str:
    if i == 0:
        return "0"
    if i == ring.whole_index:
        return "1"
    return "(" + ",".join(ring.format_element(g) for g in ring.generators(i)) + ")"


def format_ideal(R: ProductRing, I: Ideal) -> str:
    return ",".join(format_component_ideal(c, i) for c, i in zip(R.components, I.parts))
