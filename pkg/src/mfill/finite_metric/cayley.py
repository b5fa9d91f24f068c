"""
Balls in Cayley graphs of finitely presented groups.

The ball of radius R is read off a quotient of the free-group ball of radius
R + L, where L is the longest relator. Free-group words are merged whenever
a relator read from one of them closes up, and merges are propagated along
generator edges (congruence closure), in the spirit of a truncated
Todd-Coxeter enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

from ..config import cap
from .metric import CapExceeded, Graph


class InvalidPresentation(ValueError):
    """Malformed generators or relators."""


def inverse_letter(c: str) -> str:
    return c.lower() if c.isupper() else c.upper()


def inverse_word(w: str) -> str:
    return "".join(inverse_letter(c) for c in reversed(w))


def free_reduce(w: str) -> str:
    out = []
    for c in w:
        if out and out[-1] == inverse_letter(c):
            out.pop()
        else:
            out.append(c)
    return "".join(out)


@dataclass(frozen=True)
class GroupPresentation:
    """
    Generators are distinct lowercase letters; an uppercase letter denotes
    the formal inverse. Relators must be freely reduced words.
    """

    generators: tuple
    relators: tuple = ()

    def __post_init__(self):
        gens = tuple(self.generators)
        object.__setattr__(self, "generators", gens)
        object.__setattr__(self, "relators", tuple(self.relators))
        if len(set(gens)) != len(gens):
            raise InvalidPresentation("generator symbols must be distinct")
        for g in gens:
            if len(g) != 1 or not g.islower():
                raise InvalidPresentation(f"generator {g!r} must be a single lowercase letter")
        alphabet = set(gens) | {g.upper() for g in gens}
        for r in self.relators:
            if not r:
                raise InvalidPresentation("empty relator")
            bad = set(r) - alphabet
            if bad:
                raise InvalidPresentation(f"relator {r!r} uses letters {sorted(bad)} outside the alphabet")
            if free_reduce(r) != r:
                raise InvalidPresentation(f"relator {r!r} is not freely reduced")

    @property
    def alphabet(self) -> list:
        """Letters in shortlex order a < A < b < B < ..."""
        out = []
        for g in self.generators:
            out += [g, g.upper()]
        return out

    @classmethod
    def from_json(cls, obj: dict) -> "GroupPresentation":
        return cls(tuple(obj["generators"]), tuple(obj.get("relators", [])))


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        p = self.parent
        while p[x] != x:
            p[x] = p[p[x]]
            x = p[x]
        return x

    def union(self, a, b) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _relator_variants(relators) -> list:
    out = set()
    for r in relators:
        for w in (r, inverse_word(r)):
            for k in range(len(w)):
                out.add(w[k:] + w[:k])
    return sorted(out)


def cayley_ball(p: GroupPresentation, radius: int, node_cap: Optional[int] = None) -> Graph:
    """
    Ball of the given radius around the identity in the Cayley graph.

    Vertices are labelled by shortlex normal forms (the identity is the
    empty word) in shortlex order; edges join ``g`` and ``g s`` for each
    generator ``s`` when both lie in the ball.

    Raises
    ------
    CapExceeded
        When the padded free-group ball exceeds ``cayley_nodes``.
    """
    if radius < 0:
        raise ValueError("radius must be >= 0")
    limit = node_cap if node_cap is not None else cap("cayley_nodes")
    letters = p.alphabet
    lid = {c: k for k, c in enumerate(letters)}
    inv = [lid[inverse_letter(c)] for c in letters]
    pad = max((len(r) for r in p.relators), default=0)
    R = radius + pad

    # free-group ball as a tree of reduced words
    k = len(letters)
    size = 1 + sum(k * (k - 1) ** (t - 1) for t in range(1, R + 1)) if k else 1
    if size > limit:
        raise CapExceeded(f"free-group ball of radius {R} has {size} nodes (cap {limit})")
    step = [[-1] * k]
    depth = [0]
    frontier = [0]
    last = [-1]
    for t in range(R):
        nxt = []
        for u in frontier:
            for c in range(k):
                if last[u] >= 0 and c == inv[last[u]]:
                    continue
                v = len(step)
                step.append([-1] * k)
                depth.append(t + 1)
                last.append(c)
                step[u][c] = v
                step[v][inv[c]] = u
                nxt.append(v)
        frontier = nxt
    n = len(step)

    uf = _UnionFind(n)
    variants = [[lid[c] for c in w] for w in _relator_variants(p.relators)]

    def classes_step():
        # quotient automaton: class -> letter -> class
        table = {}
        merged = False
        for u in range(n):
            ru = uf.find(u)
            row = table.setdefault(ru, [-1] * k)
            for c in range(k):
                v = step[u][c]
                if v < 0:
                    continue
                rv = uf.find(v)
                if row[c] < 0:
                    row[c] = rv
                elif uf.find(row[c]) != rv:
                    uf.union(row[c], rv)
                    merged = True
        return table, merged

    changed = True
    while changed:
        changed = False
        table, merged = classes_step()
        while merged:
            table, merged = classes_step()
        for start in list(table):
            for w in variants:
                cur = start
                ok = True
                for c in w:
                    nxt_c = table.get(uf.find(cur), [-1] * k)[c]
                    if nxt_c < 0:
                        ok = False
                        break
                    cur = nxt_c
                if ok and uf.union(start, cur):
                    changed = True

    table, _ = classes_step()
    root = uf.find(0)
    # breadth-first search in letter order yields shortlex labels
    label = {root: ""}
    dist = {root: 0}
    queue = deque([root])
    order = [root]
    while queue:
        u = queue.popleft()
        if dist[u] == radius:
            continue
        for c in range(k):
            v = table[u][c]
            if v < 0:
                continue
            v = uf.find(v)
            if v not in label:
                label[v] = label[u] + letters[c]
                dist[v] = dist[u] + 1
                queue.append(v)
                order.append(v)
    idx = {u: i for i, u in enumerate(order)}
    edges = set()
    for u in order:
        for c, g in enumerate(letters):
            if not g.islower():
                continue
            v = table[u][c]
            if v < 0:
                continue
            v = uf.find(v)
            if v in idx and v != u:
                edges.add((min(idx[u], idx[v]), max(idx[u], idx[v])))
    return Graph([label[u] for u in order], [(i, j, 1) for i, j in sorted(edges)])
