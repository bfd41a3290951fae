"""Feasibility of small bounded integer linear programs.

Depth-first branch and prune: before each branch every constraint tightens
the variable bounds until nothing changes, then the first unfixed variable
(in declaration order) is tried value by value, lowest first.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .errors import InputError

LE, EQ, GE = "<=", "=", ">="


@dataclass(frozen=True)
class Constraint:
    terms: tuple        # ((var_index, coef), ...)
    op: str
    rhs: int


@dataclass
class IlpInstance:
    names: list = field(default_factory=list)
    lower: list = field(default_factory=list)
    upper: list = field(default_factory=list)
    constraints: list = field(default_factory=list)
    _index: dict = field(default_factory=dict, repr=False)

    def add_var(self, name, lo: int, hi: int) -> int:
        if name in self._index:
            raise InputError(f"variable {name!r} declared twice")
        if int(lo) != lo or int(hi) != hi or lo > hi:
            raise InputError(f"bad bounds [{lo}, {hi}] for {name!r}")
        self._index[name] = len(self.names)
        self.names.append(name)
        self.lower.append(int(lo))
        self.upper.append(int(hi))
        return self._index[name]

    def index(self, name) -> int:
        return self._index[name]

    def add_constraint(self, coeffs: dict, op: str, rhs: int) -> None:
        if op not in (LE, EQ, GE):
            raise InputError(f"unknown relation {op!r}")
        merged = {}
        for name, c in coeffs.items():
            if int(c) != c:
                raise InputError("coefficients must be integers")
            i = self._index[name]
            merged[i] = merged.get(i, 0) + int(c)
        if int(rhs) != rhs:
            raise InputError("right-hand sides must be integers")
        terms = tuple(sorted((i, c) for i, c in merged.items() if c))
        self.constraints.append(Constraint(terms, op, int(rhs)))

    @property
    def num_vars(self) -> int:
        return len(self.names)

    def dump(self) -> str:
        """One constraint per line, ``c1*v1 + c2*v2 <= b`` style, then bounds."""
        lines = []
        for con in self.constraints:
            lhs = " + ".join(f"{c}*{self.names[i]}" for i, c in con.terms) or "0"
            lines.append(f"{lhs} {con.op} {con.rhs}")
        for name, lo, hi in zip(self.names, self.lower, self.upper):
            lines.append(f"{lo} <= {name} <= {hi}")
        return "\n".join(lines)


def satisfies(inst: IlpInstance, values) -> bool:
    """Check a full assignment (list or name->value dict) against bounds and constraints."""
    if isinstance(values, dict):
        values = [values[name] for name in inst.names]
    for v, lo, hi in zip(values, inst.lower, inst.upper):
        if not lo <= v <= hi:
            return False
    for con in inst.constraints:
        lhs = sum(c * values[i] for i, c in con.terms)
        if con.op == LE and lhs > con.rhs:
            return False
        if con.op == GE and lhs < con.rhs:
            return False
        if con.op == EQ and lhs != con.rhs:
            return False
    return True


def _as_le(inst):
    rows = []
    for con in inst.constraints:
        if con.op in (LE, EQ):
            rows.append((con.terms, con.rhs))
        if con.op in (GE, EQ):
            rows.append((tuple((i, -c) for i, c in con.terms), -con.rhs))
    return rows


def _propagate(rows, watch, lo, hi, cap):
    """Tighten ``lo``/``hi`` in place; False on a proven contradiction."""
    pending = list(range(len(rows)))
    queued = set(pending)
    steps = 0
    while pending:
        steps += 1
        if steps > cap:
            break
        r = pending.pop()
        queued.discard(r)
        terms, b = rows[r]
        minact = 0
        for i, c in terms:
            minact += c * lo[i] if c > 0 else c * hi[i]
        if minact > b:
            return False
        slack = b - minact
        for i, c in terms:
            if c > 0:
                if (hi[i] - lo[i]) * c <= slack:
                    continue
                hi[i] = lo[i] + slack // c
            else:
                if (hi[i] - lo[i]) * -c <= slack:
                    continue
                lo[i] = hi[i] - slack // -c
            if lo[i] > hi[i]:
                return False
            for other in watch[i]:
                if other != r and other not in queued:
                    queued.add(other)
                    pending.append(other)
    return True


def feasible(inst: IlpInstance, stats: Optional[dict] = None) -> Optional[dict]:
    """A satisfying integer assignment as ``{name: value}``, or ``None``."""
    rows = _as_le(inst)
    nv = inst.num_vars
    watch = [[] for _ in range(nv)]
    for r, (terms, _) in enumerate(rows):
        for i, _c in terms:
            watch[i].append(r)
    cap = max(1, len(rows) * max(nv, 1))
    nodes = 0

    def search(lo, hi):
        nonlocal nodes
        nodes += 1
        if not _propagate(rows, watch, lo, hi, cap):
            return None
        for i in range(nv):
            if lo[i] != hi[i]:
                break
        else:
            return list(lo) if satisfies(inst, lo) else None
        for val in range(lo[i], hi[i] + 1):
            lo2, hi2 = list(lo), list(hi)
            lo2[i] = hi2[i] = val
            found = search(lo2, hi2)
            if found is not None:
                return found
        return None

    found = search(list(inst.lower), list(inst.upper))
    if stats is not None:
        stats["ilp_nodes"] = stats.get("ilp_nodes", 0) + nodes
    if found is None:
        return None
    return dict(zip(inst.names, found))
