"""Weighted undirected networks with exact rational couplings.

A network is a set of 1-based sites, each with a rational on-site term, plus
symmetric rational couplings between distinct sites.  Absent couplings are
zero; zero-weight edges are never stored.  Instances are treated as immutable.
"""

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


class NetworkError(ValueError):
    """Malformed network data or invalid operation on a network."""


_RATIONAL_RE = re.compile(r"^[+-]?\d+(/\d+)?$")


def parse_rational(text: str) -> Fraction:
    """Parse "p" or "p/q" (whitespace anywhere is ignored)."""
    if not isinstance(text, str):
        raise NetworkError(f"rational must be a string, got {type(text).__name__}")
    compact = re.sub(r"\s+", "", text)
    if not _RATIONAL_RE.match(compact):
        raise NetworkError(f"malformed rational {text!r}")
    try:
        return Fraction(compact)
    except ZeroDivisionError:
        raise NetworkError(f"zero denominator in rational {text!r}") from None


@dataclass
class Network:
    n: int
    onsite: tuple[Fraction, ...]
    edges: tuple[tuple[int, int, Fraction], ...]  # canonical: i < j, sorted

    def __init__(self, n: int, onsite: Sequence, edges: Iterable[tuple]):
        if n < 0:
            raise NetworkError("vertex count must be non-negative")
        onsite_t = tuple(Fraction(e) for e in onsite)
        if len(onsite_t) != n:
            raise NetworkError(f"expected {n} on-site values, got {len(onsite_t)}")
        canon = {}
        for i, j, w in edges:
            if not (1 <= i <= n and 1 <= j <= n):
                raise NetworkError(f"vertex id out of range in edge ({i}, {j})")
            if i == j:
                raise NetworkError(f"self-coupling at vertex {i} (diagonal terms belong in onsite)")
            key = (i, j) if i < j else (j, i)
            if key in canon:
                raise NetworkError(f"duplicate edge {key}")
            canon[key] = Fraction(w)
        self.n = n
        self.onsite = onsite_t
        self.edges = tuple(
            (i, j, w) for (i, j), w in sorted(canon.items()) if w != 0
        )

    def coupling(self, i: int, j: int) -> Fraction:
        key = (i, j) if i < j else (j, i)
        for a, b, w in self.edges:
            if (a, b) == key:
                return w
        return Fraction(0)

    def coupling_map(self) -> dict[tuple[int, int], Fraction]:
        """Symmetric lookup table, both orientations present."""
        m = {}
        for i, j, w in self.edges:
            m[(i, j)] = w
            m[(j, i)] = w
        return m

    def hamiltonian(self) -> list[list[Fraction]]:
        h = [[Fraction(0)] * self.n for _ in range(self.n)]
        for i, e in enumerate(self.onsite):
            h[i][i] = e
        for i, j, w in self.edges:
            h[i - 1][j - 1] = w
            h[j - 1][i - 1] = w
        return h

    def check_vertex(self, w: int) -> None:
        if not (1 <= w <= self.n):
            raise NetworkError(f"vertex id {w} out of range 1..{self.n}")

    def check_pair(self, u: int, v: int) -> None:
        self.check_vertex(u)
        self.check_vertex(v)
        if u == v:
            raise NetworkError("pair must consist of two distinct vertices")


def parse_network(text: str) -> Network:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise NetworkError(f"not valid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise NetworkError("top-level value must be an object")
    extra = set(doc) - {"n", "onsite", "edges"}
    if extra:
        raise NetworkError(f"unknown keys {sorted(extra)}")
    missing = {"n", "onsite", "edges"} - set(doc)
    if missing:
        raise NetworkError(f"missing keys {sorted(missing)}")
    n = doc["n"]
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise NetworkError("n must be a positive integer")
    if not isinstance(doc["onsite"], list):
        raise NetworkError("onsite must be a list of rational strings")
    onsite = [parse_rational(s) for s in doc["onsite"]]
    if not isinstance(doc["edges"], list):
        raise NetworkError("edges must be a list")
    edges = []
    for entry in doc["edges"]:
        if not (isinstance(entry, list) and len(entry) == 3):
            raise NetworkError(f"edge entry must be [i, j, weight], got {entry!r}")
        i, j, w = entry
        if not isinstance(i, int) or not isinstance(j, int):
            raise NetworkError(f"edge endpoints must be integers, got {entry!r}")
        weight = parse_rational(w)
        if weight == 0:
            raise NetworkError(f"zero coupling on edge ({i}, {j})")
        edges.append((i, j, weight))
    return Network(n, onsite, edges)


def serialize_network(net: Network) -> str:
    doc = {
        "n": net.n,
        "onsite": [str(e) for e in net.onsite],
        "edges": [[i, j, str(w)] for i, j, w in net.edges],
    }
    return json.dumps(doc, indent=1)


def delete_vertex(net: Network, w: int) -> Network:
    """Remove site w; ids above w shift down by one (x -> x-1 for x > w)."""
    if net.n <= 1:
        raise NetworkError("cannot delete from a network with a single vertex")
    net.check_vertex(w)

    def relabel(x: int) -> int:
        return x - 1 if x > w else x

    onsite = tuple(e for i, e in enumerate(net.onsite, start=1) if i != w)
    edges = [
        (relabel(i), relabel(j), wt)
        for i, j, wt in net.edges
        if i != w and j != w
    ]
    return Network(net.n - 1, onsite, edges)


def attach(
    base: Network,
    anchors: Sequence[int],
    ext: Network,
    bridges: Sequence[tuple[int, int, Fraction]],
) -> Network:
    """Disjoint union of base and ext plus bridge edges.

    Ext ids are offset by base.n in the result; base ids are unchanged.
    Each bridge is (anchor id in base, vertex id in ext, weight).
    """
    anchor_set = set(anchors)
    for a in anchor_set:
        base.check_vertex(a)
    offset = base.n
    edges = list(base.edges)
    edges.extend((i + offset, j + offset, w) for i, j, w in ext.edges)
    for a, e, w in bridges:
        if a not in anchor_set:
            raise NetworkError(f"bridge endpoint {a} is not a declared anchor")
        if not (1 <= e <= ext.n):
            raise NetworkError(f"bridge endpoint {e} out of range in extension")
        weight = Fraction(w)
        if weight == 0:
            raise NetworkError("zero bridge weight")
        edges.append((a, e + offset, weight))
    return Network(base.n + ext.n, base.onsite + ext.onsite, edges)


def has_swap_automorphism(net: Network, u: int, v: int) -> bool:
    """Is there a weight-preserving vertex permutation exchanging u and v?

    Plain backtracking; candidates pruned on the (onsite, incident-weight
    multiset) vertex invariant, which is preserved by any automorphism.
    """
    net.check_pair(u, v)
    n = net.n
    wt = net.coupling_map()

    def invariant(x: int):
        inc = sorted(w for (a, b), w in wt.items() if a == x)
        return (net.onsite[x - 1], tuple(inc))

    inv = {x: invariant(x) for x in range(1, n + 1)}
    if inv[u] != inv[v]:
        return False

    candidates = {
        x: [y for y in range(1, n + 1) if inv[y] == inv[x]] for x in range(1, n + 1)
    }
    assigned = {u: v, v: u}
    used = {u, v}
    order = sorted(
        (x for x in range(1, n + 1) if x not in assigned),
        key=lambda x: len(candidates[x]),
    )

    def consistent(x: int, y: int) -> bool:
        if net.onsite[x - 1] != net.onsite[y - 1]:
            return False
        for a, b in assigned.items():
            if wt.get((x, a), 0) != wt.get((y, b), 0):
                return False
        return True

    def backtrack(pos: int) -> bool:
        if pos == len(order):
            return True
        x = order[pos]
        for y in candidates[x]:
            if y in used or not consistent(x, y):
                continue
            assigned[x] = y
            used.add(y)
            if backtrack(pos + 1):
                return True
            del assigned[x]
            used.discard(y)
        return False

    return backtrack(0)
