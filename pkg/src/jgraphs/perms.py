"""Permutations as image tuples, exact permutation groups via a
deterministic Schreier-Sims stabilizer chain, and a brute-force
automorphism oracle for small graphs.

Composition convention, frozen package-wide: ``compose(p, q)`` applies q
first, so ``compose(p, q)[i] == p[q[i]]``.  Getting this backwards is the
classic silent bug, hence the explicit function instead of an operator.
"""

from __future__ import annotations

from .graphs import Graph

BRUTE_FORCE_LIMIT = 10


class Perm:
    """A permutation of 0..degree-1 stored as its image tuple."""

    __slots__ = ("images",)

    def __init__(self, images):
        images = tuple(images)
        n = len(images)
        seen = [False] * n
        for i in images:
            if not isinstance(i, int) or not 0 <= i < n or seen[i]:
                raise ValueError(f"not a permutation of 0..{n - 1}: {images}")
            seen[i] = True
        object.__setattr__(self, "images", images)

    def __setattr__(self, name, value):
        raise AttributeError("Perm is immutable")

    @property
    def degree(self) -> int:
        return len(self.images)

    @classmethod
    def identity(cls, degree: int) -> "Perm":
        return cls(range(degree))

    @classmethod
    def from_cycles(cls, degree: int, *cycles) -> "Perm":
        """Build from 0-based cycles, e.g. ``from_cycles(4, (0, 1), (2, 3))``."""
        images = list(range(degree))
        seen = set()
        for cycle in cycles:
            for point in cycle:
                if not 0 <= point < degree:
                    raise ValueError(f"cycle point {point} outside 0..{degree - 1}")
                if point in seen:
                    raise ValueError(f"point {point} repeated across cycles")
                seen.add(point)
            for i, point in enumerate(cycle):
                images[point] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @classmethod
    def parse(cls, text: str, degree: int) -> "Perm":
        """Parse disjoint cycle notation as produced by cycle_string."""
        s = text.strip()
        if s == "()":
            return cls.identity(degree)
        if not (s.startswith("(") and s.endswith(")")):
            raise ValueError(f"malformed cycle text {text!r}")
        cycles = []
        for chunk in s[1:-1].split(")("):
            parts = chunk.split()
            if not parts:
                raise ValueError(f"empty cycle in {text!r}")
            try:
                cycles.append(tuple(int(p) for p in parts))
            except ValueError:
                raise ValueError(f"malformed cycle text {text!r}") from None
        return cls.from_cycles(degree, *cycles)

    def __getitem__(self, i: int) -> int:
        return self.images[i]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Perm):
            return NotImplemented
        return self.images == other.images

    def __hash__(self) -> int:
        return hash(self.images)

    def is_identity(self) -> bool:
        return all(i == v for i, v in enumerate(self.images))

    def cycle_string(self) -> str:
        """Disjoint cycles on 0-based points, fixed points omitted.

        Cycles are ordered by smallest member and each starts at its
        smallest member; the identity prints as ``()``.
        """
        seen = set()
        parts = []
        for start in range(self.degree):
            if start in seen or self.images[start] == start:
                continue
            cycle = [start]
            seen.add(start)
            point = self.images[start]
            while point != start:
                cycle.append(point)
                seen.add(point)
                point = self.images[point]
            parts.append("(" + " ".join(str(p) for p in cycle) + ")")
        return "".join(parts) if parts else "()"

    def __repr__(self) -> str:
        return f"Perm({self.cycle_string()!r}, degree={self.degree})"


def compose(p: Perm, q: Perm) -> Perm:
    """p after q: the result maps i to p[q[i]]."""
    if p.degree != q.degree:
        raise ValueError(f"degree mismatch: {p.degree} vs {q.degree}")
    return Perm(_mul(p.images, q.images))


def inverse(p: Perm) -> Perm:
    return Perm(_inv(p.images))


# Internal raw-tuple arithmetic.  The stabilizer chain works on plain image
# tuples to keep the inner loops cheap; Perm wraps them at the boundary.

def _mul(p, q):
    return tuple(map(p.__getitem__, q))


def _inv(p):
    out = [0] * len(p)
    for i, image in enumerate(p):
        out[image] = i
    return tuple(out)


class _Level:
    __slots__ = ("point", "gens", "trans", "done")

    def __init__(self, point, identity):
        self.point = point
        self.gens = []
        self.trans = {point: identity}
        self.done = set()


def _sift(levels, g, start, identity):
    """Strip g through the chain from the given level.

    Returns (residue, level index).  The residue fixes the base points of
    all levels before the returned index; it is the identity exactly when
    g is a member of the group generated so far below ``start``.
    """
    i = start
    while i < len(levels):
        level = levels[i]
        image = g[level.point]
        if image != level.point:
            rep = level.trans.get(image)
            if rep is None:
                return g, i
            g = _mul(_inv(rep), g)
        i += 1
    return g, len(levels)


class PermGroup:
    """Exact permutation group built from generators.

    The constructor runs a deterministic Schreier-Sims pass: base points
    are the smallest points moved at each level, orbits are closed in
    ascending point order, and generators are processed in input order, so
    the base, the strong generators and the transversals are reproducible.
    ``order`` is an exact Python int.
    """

    __slots__ = ("degree", "generators", "base", "order", "_levels", "_identity")

    def __init__(self, generators, degree: int):
        generators = tuple(generators)
        for g in generators:
            if not isinstance(g, Perm):
                raise ValueError("generators must be Perm instances")
            if g.degree != degree:
                raise ValueError(f"generator degree {g.degree} != group degree {degree}")
        identity = tuple(range(degree))
        levels = []
        for g in generators:
            residue, stuck = _sift(levels, g.images, 0, identity)
            if residue != identity:
                _place(levels, residue, stuck, identity)
        i = len(levels) - 1
        while i >= 0:
            jumped = _process_level(levels, i, identity)
            i = i - 1 if jumped is None else jumped
        order = 1
        for level in levels:
            order *= len(level.trans)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "generators", generators)
        object.__setattr__(self, "base", tuple(level.point for level in levels))
        object.__setattr__(self, "order", order)
        object.__setattr__(self, "_levels", tuple(levels))
        object.__setattr__(self, "_identity", identity)

    def __setattr__(self, name, value):
        raise AttributeError("PermGroup is immutable")

    def contains(self, p: Perm) -> bool:
        if p.degree != self.degree:
            raise ValueError(f"degree mismatch: {p.degree} vs {self.degree}")
        residue, _ = _sift(self._levels, p.images, 0, self._identity)
        return residue == self._identity

    def orbit(self, point: int) -> frozenset[int]:
        """Orbit of a point under the whole group."""
        if not 0 <= point < self.degree:
            raise ValueError(f"point {point} outside 0..{self.degree - 1}")
        seen = {point}
        queue = [point]
        while queue:
            p = queue.pop()
            for g in self.generators:
                q = g.images[p]
                if q not in seen:
                    seen.add(q)
                    queue.append(q)
        return frozenset(seen)

    def elements(self):
        """Yield every element exactly once (use only for small orders)."""

        def rec(i):
            if i == len(self._levels):
                yield self._identity
                return
            level = self._levels[i]
            for point in sorted(level.trans):
                rep = level.trans[point]
                for tail in rec(i + 1):
                    yield _mul(rep, tail)

        for images in rec(0):
            yield Perm(images)

    def __repr__(self) -> str:
        return f"PermGroup(degree={self.degree}, order={self.order})"


def _place(levels, residue, index, identity):
    if index == len(levels):
        point = next(p for p, image in enumerate(residue) if image != p)
        levels.append(_Level(point, identity))
    levels[index].gens.append(residue)


def _process_level(levels, i, identity):
    """Close level i: extend its transversal, then sift Schreier generators.

    Returns None once every Schreier generator of the level sifts to the
    identity, or the deeper level index where a non-trivial residue was
    placed (the caller resumes work there).  Transversal entries are never
    rewritten, so each (point, generator) pair is examined once.
    """
    level = levels[i]
    gens_here = [g for j in range(i, len(levels)) for g in levels[j].gens]
    frontier = sorted(level.trans)
    while frontier:
        nxt = []
        for p in frontier:
            rep = level.trans[p]
            for g in gens_here:
                q = g[p]
                if q not in level.trans:
                    level.trans[q] = _mul(g, rep)
                    nxt.append(q)
        frontier = sorted(nxt)
    for p in sorted(level.trans):
        rep = level.trans[p]
        for g in gens_here:
            key = (p, g)
            if key in level.done:
                continue
            level.done.add(key)
            schreier = _mul(_inv(level.trans[g[p]]), _mul(g, rep))
            if schreier == identity:
                continue
            residue, stuck = _sift(levels, schreier, i + 1, identity)
            if residue != identity:
                _place(levels, residue, stuck, identity)
                return stuck
    return None


def group_from_generators(generators, degree: int) -> PermGroup:
    """Group generated by the given permutations; empty input gives order 1."""
    return PermGroup(generators, degree)


def brute_force_automorphisms(g: Graph) -> list[Perm]:
    """Every automorphism of g by exhaustive assignment with pruning.

    Candidates are filtered by degree and by adjacency against all already
    placed vertices, which keeps the tiny instances this oracle is meant
    for tractable.  Hard limit of 10 vertices; this is the independent
    check for the search module, not a general tool.
    """
    if g.n > BRUTE_FORCE_LIMIT:
        raise ValueError(f"brute force oracle is limited to {BRUTE_FORCE_LIMIT} vertices")
    n = g.n
    adj = g.adj
    deg = [row.bit_count() for row in adj]
    found = []
    images = [0] * n
    used = [False] * n

    def extend(v):
        if v == n:
            found.append(Perm(tuple(images)))
            return
        row = adj[v]
        for w in range(n):
            if used[w] or deg[w] != deg[v]:
                continue
            ok = True
            for u in range(v):
                if ((row >> u) & 1) != ((adj[w] >> images[u]) & 1):
                    ok = False
                    break
            if ok:
                images[v] = w
                used[w] = True
                extend(v + 1)
                used[w] = False

    extend(0)
    return found
