"""Distributed index coding problem instances.

An instance has n receivers (n <= 6); receiver j wants message j and knows
side information A_j, a subset of the other messages.  Every nonempty subset
J of [n] is a server holding the messages in J, broadcasting over a link of
capacity C_J >= 0.  Subsets of [n] are bitmasks: receiver j is bit j-1, so
server masks run 1 .. 2^n - 1.

The compact text form mirrors the usual notation: "(1);(2|3);(3|2)" means
A_1 = {}, A_2 = {3}, A_3 = {2}.  The side information digraph has an edge
i -> j iff i is side information of receiver j.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from itertools import permutations
from typing import Iterable, Iterator, Mapping

from .rationals import ONE, ZERO, rat, rat_str

MAX_RECEIVERS = 6

_RECEIVER_RE = re.compile(r"^\(\s*(\d+)\s*(?:\|\s*(\d+(?:\s*,\s*\d+)*)\s*)?\)$")


def mask_of(indices: Iterable[int]) -> int:
    """Bitmask of 1-based receiver indices."""
    m = 0
    for i in indices:
        m |= 1 << (i - 1)
    return m


def elements(mask: int) -> list[int]:
    """1-based receiver indices of a bitmask, ascending."""
    out = []
    i = 1
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def subset_key(mask: int) -> str:
    """Canonical text key of a subset, e.g. 0b101 -> '1,3'."""
    return ",".join(str(i) for i in elements(mask))


def parse_subset_key(key: str, n: int) -> int:
    """Inverse of subset_key; validates a nonempty subset of [n]."""
    try:
        ids = [int(tok) for tok in key.split(",")]
    except ValueError:
        raise ValueError(f"bad subset key {key!r}") from None
    if not ids or any(i < 1 or i > n for i in ids) or len(set(ids)) != len(ids):
        raise ValueError(f"subset key {key!r} is not a nonempty subset of [{n}]")
    return mask_of(ids)


def nonempty_subsets(n: int) -> range:
    """All nonempty server masks over [n], ascending."""
    return range(1, 1 << n)


def subsets_of(mask: int) -> Iterator[int]:
    """All nonempty submasks of mask, ascending."""
    sub = mask
    subs = []
    while sub:
        subs.append(sub)
        sub = (sub - 1) & mask
    return iter(sorted(subs))


def popcount(mask: int) -> int:
    return bin(mask).count("1")


@dataclass(frozen=True)
class Problem:
    """A distributed index coding instance.

    side_info[j-1] is the mask A_j; caps[m] is C_J for server mask m
    (caps[0] is an unused placeholder so masks index directly).
    """

    n: int
    side_info: tuple[int, ...]
    caps: tuple

    def __post_init__(self):
        if not 1 <= self.n <= MAX_RECEIVERS:
            raise ValueError(f"n must be in 1..{MAX_RECEIVERS}, got {self.n}")
        full = (1 << self.n) - 1
        if len(self.side_info) != self.n:
            raise ValueError("side_info must have one entry per receiver")
        for j, a in enumerate(self.side_info, start=1):
            if a & ~full:
                raise ValueError(f"A_{j} contains indices outside [{self.n}]")
            if a >> (j - 1) & 1:
                raise ValueError(f"receiver {j} lists itself as side information")
        if len(self.caps) != (1 << self.n):
            raise ValueError("capacity table must cover every nonempty server")
        for m in nonempty_subsets(self.n):
            if self.caps[m] < 0:
                raise ValueError(f"negative capacity for server {{{subset_key(m)}}}")

    @property
    def full_mask(self) -> int:
        return (1 << self.n) - 1

    def cap(self, server: int):
        return self.caps[server]

    def side(self, j: int) -> int:
        self._check_receiver(j)
        return self.side_info[j - 1]

    def _check_receiver(self, j: int) -> None:
        if not 1 <= j <= self.n:
            raise ValueError(f"receiver index {j} out of range 1..{self.n}")

    def has_unit_caps(self) -> bool:
        return all(self.caps[m] == ONE for m in nonempty_subsets(self.n))

    def compact(self) -> str:
        parts = []
        for j in range(1, self.n + 1):
            a = self.side_info[j - 1]
            parts.append(f"({j}|{subset_key(a)})" if a else f"({j})")
        return ";".join(parts)

    def __str__(self) -> str:
        return self.compact()


def _capacity_table(n: int, overrides: Mapping | None) -> tuple:
    caps = [ZERO] + [ONE] * ((1 << n) - 1)
    if overrides:
        for key, value in overrides.items():
            mask = parse_subset_key(key, n) if isinstance(key, str) else key
            if not isinstance(mask, int) or mask <= 0 or mask >= (1 << n):
                raise ValueError(f"capacity key {key!r} is not a nonempty subset of [{n}]")
            q = rat(value)
            if q < 0:
                raise ValueError(f"negative capacity {value!r} for server {{{subset_key(mask)}}}")
            caps[mask] = q
    return tuple(caps)


def parse_problem(text: str, capacities: Mapping | None = None) -> Problem:
    """Parse compact notation like "(1|4);(2|3,4);(3|1,2);(4|2,3)".

    Capacities default to C_J = 1 for every server (the normalized symmetric
    case); `capacities` maps subset keys ("2,3" or masks) to rationals.
    """
    groups = [g.strip() for g in text.strip().split(";")]
    if not groups or groups == [""]:
        raise ValueError("empty problem description")
    n = len(groups)
    if n > MAX_RECEIVERS:
        raise ValueError(f"at most {MAX_RECEIVERS} receivers supported, got {n}")
    side = [None] * n
    for g in groups:
        m = _RECEIVER_RE.match(g)
        if not m:
            raise ValueError(f"malformed receiver group {g!r}")
        j = int(m.group(1))
        if not 1 <= j <= n:
            raise ValueError(f"receiver id {j} outside 1..{n}")
        if side[j - 1] is not None:
            raise ValueError(f"duplicate receiver id {j}")
        a = mask_of(int(t) for t in m.group(2).split(",")) if m.group(2) else 0
        side[j - 1] = a
    return Problem(n, tuple(side), _capacity_table(n, capacities))


def problem_to_json(p: Problem) -> str:
    doc = {
        "n": p.n,
        "side_info": {str(j): elements(p.side_info[j - 1]) for j in range(1, p.n + 1)},
        "capacities": {subset_key(m): rat_str(p.caps[m]) for m in nonempty_subsets(p.n)},
    }
    return json.dumps(doc, sort_keys=True)


def problem_from_json(text: str) -> Problem:
    """Parse the JSON problem document; omitted capacities default to 1."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"invalid JSON problem document: {exc}") from exc
    if not isinstance(doc, dict) or "n" not in doc or "side_info" not in doc:
        raise ValueError("problem document needs 'n' and 'side_info'")
    n = doc["n"]
    if not isinstance(n, int) or not 1 <= n <= MAX_RECEIVERS:
        raise ValueError(f"n must be an integer in 1..{MAX_RECEIVERS}")
    side = []
    for j in range(1, n + 1):
        if str(j) not in doc["side_info"]:
            raise ValueError(f"missing side_info entry for receiver {j}")
        ids = doc["side_info"][str(j)]
        if not isinstance(ids, list) or any(not isinstance(i, int) or not 1 <= i <= n for i in ids):
            raise ValueError(f"side_info[{j}] must list receiver indices in 1..{n}")
        side.append(mask_of(ids))
    if set(doc["side_info"]) != {str(j) for j in range(1, n + 1)}:
        raise ValueError("side_info keys must be exactly the receivers 1..n")
    return Problem(n, tuple(side), _capacity_table(n, doc.get("capacities")))


def interfering_set(p: Problem, j: int) -> int:
    """B_j: messages neither wanted by nor known to receiver j."""
    p._check_receiver(j)
    return p.full_mask & ~(p.side_info[j - 1] | (1 << (j - 1)))


def is_acyclic_induced(p: Problem, s_mask: int) -> bool:
    """True iff the side information digraph induced by S has no directed cycle.

    Iterative depth-first search with the usual white/grey/black coloring.
    """
    if s_mask & ~p.full_mask:
        raise ValueError("S must be a subset of [n]")
    nodes = elements(s_mask)
    out = {
        i: [j for j in nodes if p.side_info[j - 1] >> (i - 1) & 1 and j != i]
        for i in nodes
    }
    color = dict.fromkeys(nodes, 0)  # 0 white, 1 on stack, 2 done
    for root in nodes:
        if color[root]:
            continue
        stack = [(root, iter(out[root]))]
        color[root] = 1
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == 1:
                    return False
                if color[nxt] == 0:
                    color[nxt] = 1
                    stack.append((nxt, iter(out[nxt])))
                    advanced = True
                    break
            if not advanced:
                color[node] = 2
                stack.pop()
    return True


def apply_permutation(p: Problem, sigma: tuple[int, ...]) -> Problem:
    """Relabel receivers: old receiver j becomes sigma[j-1].

    Side information and capacity keys move together, so the relabeled
    instance describes the same physical problem.
    """
    if sorted(sigma) != list(range(1, p.n + 1)):
        raise ValueError("sigma must be a permutation of 1..n")
    side = [0] * p.n
    for j in range(1, p.n + 1):
        side[sigma[j - 1] - 1] = _permute_mask(p.side_info[j - 1], sigma)
    caps = [ZERO] * (1 << p.n)
    for m in nonempty_subsets(p.n):
        caps[_permute_mask(m, sigma)] = p.caps[m]
    return Problem(p.n, tuple(side), tuple(caps))


def _permute_mask(mask: int, sigma: tuple[int, ...]) -> int:
    out = 0
    for i in elements(mask):
        out |= 1 << (sigma[i - 1] - 1)
    return out


def _encoding(p: Problem):
    return (p.side_info, tuple(p.caps[m] for m in nonempty_subsets(p.n)))


def canonical_form(p: Problem) -> tuple[Problem, tuple[int, ...]]:
    """Lexicographically smallest relabeling and one permutation achieving it.

    Two instances are isomorphic iff their canonical forms are equal; with
    symmetric unit capacities this is digraph isomorphism, and in general a
    permutation only counts if it maps the capacity table onto itself.
    """
    best = None
    best_sigma = None
    for sigma in permutations(range(1, p.n + 1)):
        q = apply_permutation(p, sigma)
        enc = _encoding(q)
        if best is None or enc < best:
            best, best_q, best_sigma = enc, q, sigma
    return best_q, best_sigma


def enumerate_problems(n: int, up_to_iso: bool = False) -> list[Problem]:
    """All side information assignments with unit capacities, n <= 4.

    With up_to_iso, one canonical representative per isomorphism class,
    sorted by canonical encoding.
    """
    if not 1 <= n <= 4:
        raise ValueError(f"enumeration supported for n in 1..4, got {n}")
    caps = _capacity_table(n, None)
    full = (1 << n) - 1
    problems = []
    choices: list[list[int]] = []
    for j in range(1, n + 1):
        allowed = full & ~(1 << (j - 1))
        choices.append([0] + list(subsets_of(allowed)))
    def rec(j: int, acc: list[int]) -> None:
        if j == n:
            problems.append(Problem(n, tuple(acc), caps))
            return
        for a in choices[j]:
            acc.append(a)
            rec(j + 1, acc)
            acc.pop()
    rec(0, [])
    if not up_to_iso:
        return problems
    seen = {}
    for p in problems:
        canon, _ = canonical_form(p)
        seen.setdefault(_encoding(canon), canon)
    return [seen[k] for k in sorted(seen)]
