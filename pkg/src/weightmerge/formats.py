"""Text formats: edge lists, plan files, exact weight serialisation."""

from __future__ import annotations

from collections.abc import Iterable
from dataclasses import dataclass
from fractions import Fraction

from .errors import NoSuchEdge, ParseError
from .graph import ContractionRequest, Mode, WeightedGraph, make_request

MODES = tuple(m.value for m in Mode)


def format_weight(w: Fraction) -> str:
    """Exact text form: a terminating decimal when one exists, else ``p/q``."""
    w = Fraction(w)
    den = w.denominator
    twos = fives = 0
    while den % 2 == 0:
        den //= 2
        twos += 1
    while den % 5 == 0:
        den //= 5
        fives += 1
    if den != 1:
        return f"{w.numerator}/{w.denominator}"
    digits = max(twos, fives)
    if digits == 0:
        return str(w.numerator)
    scaled = abs(w.numerator) * (10**digits // w.denominator)
    whole, frac = divmod(scaled, 10**digits)
    sign = "-" if w < 0 else ""
    return f"{sign}{whole}.{str(frac).rjust(digits, '0').rstrip('0')}"


def format_signed(w: Fraction) -> str:
    return ("+" if w >= 0 else "") + format_weight(w)


def format_edge_list(g: WeightedGraph) -> str:
    return "".join(f"{e.u} {e.v} {format_weight(e.weight)}\n" for e in g.edges)


@dataclass(frozen=True)
class PlanFile:
    """Parsed plan: edges named by endpoints, plus an optional mode."""

    contracts: tuple[tuple[str, str, int], ...]
    mode: str | None = None


def parse_plan(text: str) -> PlanFile:
    contracts = []
    mode = None
    for no, raw in enumerate(text.splitlines(), start=1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        if parts[0] == "contract" and len(parts) == 3:
            contracts.append((parts[1], parts[2], no))
        elif parts[0] == "mode" and len(parts) == 2:
            if parts[1] not in MODES:
                raise ParseError(f"unknown mode {parts[1]!r}", no)
            if mode is not None:
                raise ParseError("mode given twice", no)
            mode = parts[1]
        else:
            raise ParseError(f"expected 'contract u v' or 'mode m', got {body!r}", no)
    if not contracts:
        raise ParseError("plan names no edge to contract")
    return PlanFile(tuple(contracts), mode)


def resolve_plan(
    g: WeightedGraph, plan: PlanFile, mode: str | None = None
) -> ContractionRequest:
    """Turn endpoint pairs into edge ids and validate the request.

    ``mode`` overrides the mode line of the plan.
    """
    targets = []
    for u, v, line in plan.contracts:
        try:
            targets.append(g.find_edge(u, v))
        except (NoSuchEdge, KeyError):
            raise NoSuchEdge(f"no edge between {u} and {v}", line) from None
    return make_request(g, targets, mode or plan.mode)


def parse_records(text: str) -> list[dict[str, str]]:
    """Read back the ``key=value`` record format."""
    return [dict(tok.split("=", 1) for tok in line.split()) for line in text.splitlines() if line.strip()]


def render_records(records: Iterable[dict[str, object]]) -> str:
    return "".join(" ".join(f"{k}={v}" for k, v in r.items()) + "\n" for r in records)
