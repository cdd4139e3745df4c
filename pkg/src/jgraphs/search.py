"""Colour refinement and individualization-refinement search: automorphism
groups, isomorphism testing, canonical forms.

Refinement keeps ordered partitions.  The public ColoredPartition presents
cells in the frozen (size, smallest member) order, but search trees order
cells by the refinement trace: when a cell splits, its fragments take its
position ordered by ascending splitter count.  Trace order is preserved by
relabelling (the counts are invariants), which is what makes cross-branch
cell pairing and the canonical search correct; the (size, smallest member)
order is not, so it stays a presentation rule only.

Everything here is deterministic: target cells are the first smallest
non-singleton cell in trace order and branch candidates run in ascending
vertex order.  Discovered automorphisms prune sibling branches to one
representative per orbit.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .graphs import DEFAULT_VERTEX_CAP, Graph, VertexCapExceeded, bits
from .perms import Perm, PermGroup


@dataclass(frozen=True)
class ColoredPartition:
    """A vertex colouring presented as an ordered partition.

    ``color[v]`` is the colour id of vertex v.  ``cells[c]`` lists the
    vertices of colour c in ascending order, and colour ids are contiguous
    from 0, ordered by (cell size, smallest member).
    """

    color: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]

    @classmethod
    def from_cells(cls, n: int, cells) -> "ColoredPartition":
        """Normalize an iterable of cells into the frozen presentation."""
        ordered = []
        seen = 0
        for cell in cells:
            members = tuple(sorted(set(cell)))
            if not members:
                raise ValueError("empty cell in partition")
            mask = 0
            for v in members:
                if not 0 <= v < n:
                    raise ValueError(f"vertex {v} outside 0..{n - 1}")
                mask |= 1 << v
            if mask & seen:
                raise ValueError("cells are not disjoint")
            seen |= mask
            ordered.append(members)
        if seen != (1 << n) - 1:
            raise ValueError("cells do not cover every vertex")
        ordered.sort(key=lambda members: (len(members), members[0]))
        color = [0] * n
        for c, members in enumerate(ordered):
            for v in members:
                color[v] = c
        return cls(tuple(color), tuple(ordered))

    @classmethod
    def uniform(cls, n: int) -> "ColoredPartition":
        return cls.from_cells(n, [range(n)])

    @property
    def n(self) -> int:
        return len(self.color)

    @property
    def is_discrete(self) -> bool:
        return all(len(cell) == 1 for cell in self.cells)


def _split_counts(adj, cell, splitter):
    """Group a cell's vertices by their neighbour count into the splitter."""
    groups = {}
    m = cell
    while m:
        low = m & -m
        v = low.bit_length() - 1
        m ^= low
        c = (adj[v] & splitter).bit_count()
        prev = groups.get(c)
        groups[c] = low if prev is None else prev | low
    return groups


def _refine_one(adj, cells, queue):
    """Refine one ordered partition (cell masks) to its coarsest equitable
    refinement.  The queue holds pending splitter masks."""
    while queue:
        splitter = queue.popleft()
        k = 0
        while k < len(cells):
            cell = cells[k]
            if cell & (cell - 1):
                groups = _split_counts(adj, cell, splitter)
                if len(groups) > 1:
                    frags = [groups[c] for c in sorted(groups)]
                    cells[k:k + 1] = frags
                    queue.extend(frags)
                    k += len(frags)
                    continue
            k += 1


def _refine_pair(adj_a, cells_a, adj_b, cells_b, queue):
    """Refine two partitions in lockstep.

    Returns False as soon as the two sides disagree on any split signature,
    which proves no colour-preserving isomorphism matches the current
    individualization prefix.
    """
    while queue:
        split_a, split_b = queue.popleft()
        k = 0
        while k < len(cells_a):
            groups_a = _split_counts(adj_a, cells_a[k], split_a)
            groups_b = _split_counts(adj_b, cells_b[k], split_b)
            if len(groups_a) != len(groups_b):
                return False
            counts = sorted(groups_a)
            if counts != sorted(groups_b):
                return False
            frags_a = [groups_a[c] for c in counts]
            frags_b = [groups_b[c] for c in counts]
            if any(fa.bit_count() != fb.bit_count() for fa, fb in zip(frags_a, frags_b)):
                return False
            if len(counts) > 1:
                cells_a[k:k + 1] = frags_a
                cells_b[k:k + 1] = frags_b
                queue.extend(zip(frags_a, frags_b))
                k += len(counts)
            else:
                k += 1
    return True


def _target_cell(cells):
    """Branch cell position: first smallest non-singleton in trace order."""
    best = -1
    best_size = 0
    for k, cell in enumerate(cells):
        size = cell.bit_count()
        if size > 1 and (best < 0 or size < best_size):
            best = k
            best_size = size
    return best


def _individualize(cells, k, v):
    """Split {v} off the front of cell k; returns the two fragments."""
    rest = cells[k] ^ (1 << v)
    frags = [1 << v, rest]
    cells[k:k + 1] = frags
    return frags


def _orbit_mask(gens, start):
    seen = 1 << start
    queue = [start]
    while queue:
        p = queue.pop()
        for g in gens:
            q = g[p]
            if not (seen >> q) & 1:
                seen |= 1 << q
                queue.append(q)
    return seen


def _map_from_cells(cells_a, cells_b):
    out = [0] * len(cells_a)
    for cell_a, cell_b in zip(cells_a, cells_b):
        out[cell_a.bit_length() - 1] = cell_b.bit_length() - 1
    return tuple(out)


def _maps_edges(adj_a, adj_b, images):
    for v, row in enumerate(adj_a):
        mapped = 0
        for w in bits(row):
            mapped |= 1 << images[w]
        if mapped != adj_b[images[v]]:
            return False
    return True


def _complete_map(adj_a, cells_a, adj_b, cells_b):
    """Extend an aligned pair of refined partitions to a full isomorphism,
    or return None."""
    k = _target_cell(cells_a)
    if k < 0:
        images = _map_from_cells(cells_a, cells_b)
        return images if _maps_edges(adj_a, adj_b, images) else None
    v = (cells_a[k] & -cells_a[k]).bit_length() - 1
    for u in bits(cells_b[k]):
        branch_a = list(cells_a)
        branch_b = list(cells_b)
        frags_a = _individualize(branch_a, k, v)
        frags_b = _individualize(branch_b, k, u)
        queue = deque(zip(frags_a, frags_b))
        if _refine_pair(adj_a, branch_a, adj_b, branch_b, queue):
            found = _complete_map(adj_a, branch_a, adj_b, branch_b)
            if found is not None:
                return found
    return None


def _coset_representative(adj, cells, k, v, u):
    """Search for an automorphism respecting the partition that maps v to u,
    both taken from cell k."""
    cells_a = list(cells)
    cells_b = list(cells)
    frags_a = _individualize(cells_a, k, v)
    frags_b = _individualize(cells_b, k, u)
    queue = deque(zip(frags_a, frags_b))
    if not _refine_pair(adj, cells_a, adj, cells_b, queue):
        return None
    return _complete_map(adj, cells_a, adj, cells_b)


def _aut_generators(adj, cells):
    """Generators of the colour-preserving automorphism group of an already
    equitable ordered partition.

    Recursive orbit-stabilizer scheme: individualize the smallest vertex of
    the target cell, recurse for the stabilizer, then search one coset
    representative per orbit among the remaining branch candidates.
    """
    k = _target_cell(cells)
    if k < 0:
        return []
    cell = cells[k]
    v = (cell & -cell).bit_length() - 1
    stab_cells = list(cells)
    frags = _individualize(stab_cells, k, v)
    _refine_one(adj, stab_cells, deque(frags))
    gens = _aut_generators(adj, stab_cells)
    reached = _orbit_mask(gens, v) if gens else (1 << v)
    for u in bits(cell):
        if (reached >> u) & 1:
            continue
        rep = _coset_representative(adj, cells, k, v, u)
        if rep is not None:
            gens.append(rep)
            reached = _orbit_mask(gens, v)
    return gens


def _initial_cells(g, colors):
    if colors is None:
        return [(1 << g.n) - 1]
    if isinstance(colors, ColoredPartition):
        if colors.n != g.n:
            raise ValueError(f"partition covers {colors.n} vertices, graph has {g.n}")
        cell_lists = colors.cells
    else:
        cell_lists = ColoredPartition.from_cells(g.n, colors).cells
    out = []
    for members in cell_lists:
        mask = 0
        for v in members:
            mask |= 1 << v
        out.append(mask)
    return out


def _check_cap(g, cap):
    limit = DEFAULT_VERTEX_CAP if cap is None else cap
    if g.n > limit:
        raise VertexCapExceeded(f"graph has {g.n} vertices, search cap is {limit}")


def color_refinement(g: Graph, initial: ColoredPartition | None = None) -> ColoredPartition:
    """Coarsest equitable refinement of the initial colouring.

    Two vertices stay in one cell exactly when no chain of neighbour-count
    distinctions separates them; the refinement invariant is the multiset
    of neighbour colours, nothing stronger.
    """
    if initial is None:
        initial = ColoredPartition.uniform(g.n)
    cells = _initial_cells(g, initial)
    _refine_one(g.adj, cells, deque(cells))
    return ColoredPartition.from_cells(g.n, [tuple(bits(cell)) for cell in cells])


def check_automorphism(g: Graph, p: Perm) -> bool:
    """True exactly when p maps edges to edges and non-edges to non-edges."""
    if p.degree != g.n:
        raise ValueError(f"permutation degree {p.degree} != vertex count {g.n}")
    return _maps_edges(g.adj, g.adj, p.images)


def verify_isomorphism(g: Graph, h: Graph, p: Perm) -> bool:
    """True exactly when p maps g onto h edge for edge."""
    if g.n != h.n or p.degree != g.n:
        return False
    return _maps_edges(g.adj, h.adj, p.images)


def automorphism_group(g: Graph, colors=None, cap: int | None = None) -> PermGroup:
    """The automorphism group of g, optionally restricted to colour-preserving
    permutations when an initial colouring is given.

    Every generator handed to the group is re-verified through
    check_automorphism before it is returned.
    """
    _check_cap(g, cap)
    cells = _initial_cells(g, colors)
    _refine_one(g.adj, cells, deque(cells))
    raw = _aut_generators(g.adj, cells)
    gens = []
    for images in raw:
        p = Perm(images)
        if not check_automorphism(g, p):
            raise RuntimeError("internal error: search produced a non-automorphism")
        gens.append(p)
    return PermGroup(gens, g.n)


def find_isomorphism(g: Graph, h: Graph, cap: int | None = None):
    """An isomorphism from g onto h as a Perm, or None.

    Any returned permutation has been verified edge for edge.
    """
    _check_cap(g, cap)
    _check_cap(h, cap)
    if g.n != h.n or g.edge_count() != h.edge_count():
        return None
    if sorted(g.degrees()) != sorted(h.degrees()):
        return None
    cells_a = [(1 << g.n) - 1]
    cells_b = [(1 << h.n) - 1]
    queue = deque(zip(list(cells_a), list(cells_b)))
    if not _refine_pair(g.adj, cells_a, h.adj, cells_b, queue):
        return None
    images = _complete_map(g.adj, cells_a, h.adj, cells_b)
    if images is None:
        return None
    p = Perm(images)
    if not verify_isomorphism(g, h, p):
        raise RuntimeError("internal error: search produced a non-isomorphism")
    return p


class CanonicalForm:
    """Canonical relabelling of a graph.

    ``ordering[i]`` is the original vertex placed at canonical index i and
    ``edges`` is the relabelled edge list, sorted.  Two graphs are
    isomorphic exactly when their canonical forms compare equal, which
    compares vertex count and edges, not the ordering witness.
    """

    __slots__ = ("n", "ordering", "edges")

    def __init__(self, n, ordering, edges):
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "ordering", tuple(ordering))
        object.__setattr__(self, "edges", tuple(edges))

    def __setattr__(self, name, value):
        raise AttributeError("CanonicalForm is immutable")

    def __eq__(self, other):
        if not isinstance(other, CanonicalForm):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __hash__(self):
        return hash((self.n, self.edges))

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)

    def __repr__(self):
        return f"CanonicalForm(n={self.n}, edges={len(self.edges)})"


def canonical_form(g: Graph, cap: int | None = None) -> CanonicalForm:
    """Deterministic canonical labelling via the pruned leaf minimum.

    All leaves of the individualization-refinement tree are compared by
    their relabelled adjacency rows and the minimum wins.  Known
    automorphisms (the computed group plus any found at equal leaves)
    collapse sibling branches to orbit representatives; pruned subtrees
    only repeat leaf values already seen, so the minimum is unaffected and
    isomorphic graphs agree on it.
    """
    _check_cap(g, cap)
    n = g.n
    adj = g.adj
    known = [p.images for p in automorphism_group(g, cap=cap).generators]
    known_set = set(known)
    best: list = [None, None]

    def leaf(cells):
        relabel = [0] * n
        for position, cell in enumerate(cells):
            relabel[cell.bit_length() - 1] = position
        rows = [0] * n
        for v in range(n):
            mapped = 0
            for w in bits(adj[v]):
                mapped |= 1 << relabel[w]
            rows[relabel[v]] = mapped
        key = tuple(rows)
        if best[0] is None or key < best[0]:
            best[0] = key
            best[1] = relabel
        elif key == best[0]:
            other = best[1]
            position_of = [0] * n
            for v in range(n):
                position_of[other[v]] = v
            gamma = tuple(position_of[relabel[v]] for v in range(n))
            if gamma not in known_set and _maps_edges(adj, adj, gamma):
                known.append(gamma)
                known_set.add(gamma)

    def search(cells, prefix):
        k = _target_cell(cells)
        if k < 0:
            leaf(cells)
            return
        explored = 0
        for u in bits(cells[k]):
            if (explored >> u) & 1:
                continue
            fixers = [a for a in known if all(a[p] == p for p in prefix)]
            explored |= _orbit_mask(fixers, u) if fixers else (1 << u)
            branch = list(cells)
            frags = _individualize(branch, k, u)
            _refine_one(adj, branch, deque(frags))
            search(branch, prefix + (u,))

    cells0 = [(1 << n) - 1]
    _refine_one(adj, cells0, deque(cells0))
    search(cells0, ())
    relabel = best[1]
    ordering = [0] * n
    for v in range(n):
        ordering[relabel[v]] = v
    edges = []
    for i in range(n):
        row = best[0][i] >> (i + 1)
        for w in bits(row):
            edges.append((i, i + 1 + w))
    return CanonicalForm(n, ordering, edges)
