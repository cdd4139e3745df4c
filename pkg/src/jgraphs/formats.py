"""Graph serialization: graph6, DOT, and plain edge lists.

graph6 is the compact ASCII encoding used by nauty and friends.  We
support reading and writing; DOT and edge lists are write-only, meant
for handing graphs to Graphviz or a spreadsheet.
"""

from __future__ import annotations

from .graphs import Graph

GRAPH6_HEADER = ">>graph6<<"

# graph6 size encoding switches representation at these bounds
_SMALL_N_MAX = 62
_MEDIUM_N_MAX = 258047


def _encode_size(n: int) -> str:
    if n <= _SMALL_N_MAX:
        return chr(n + 63)
    if n <= _MEDIUM_N_MAX:
        return chr(126) + chr(((n >> 12) & 63) + 63) + chr(((n >> 6) & 63) + 63) + chr((n & 63) + 63)
    raise ValueError(f"graph6 encoding for n > {_MEDIUM_N_MAX} not supported (n={n})")


def _upper_triangle_bits(g: Graph) -> list[int]:
    # column-by-column: (0,1), (0,2), (1,2), (0,3), ...
    bits = []
    for j in range(1, g.n):
        col = g.adj[j]
        for i in range(j):
            bits.append((col >> i) & 1)
    return bits


def write_graph6(g: Graph) -> str:
    """Encode a graph as a graph6 string (no header, no trailing newline)."""
    out = [_encode_size(g.n)]
    bits = _upper_triangle_bits(g)
    while len(bits) % 6:
        bits.append(0)
    for k in range(0, len(bits), 6):
        word = 0
        for b in bits[k : k + 6]:
            word = (word << 1) | b
        out.append(chr(word + 63))
    return "".join(out)


def parse_graph6(text: str) -> Graph:
    """Decode one graph6 string.

    An optional leading ``>>graph6<<`` header is accepted and stripped;
    surrounding whitespace is ignored.  Raises ValueError on malformed
    input, including nonzero padding bits or a wrong body length.
    """
    s = text.strip()
    if s.startswith(GRAPH6_HEADER):
        s = s[len(GRAPH6_HEADER) :]
    if not s:
        raise ValueError("empty graph6 string")
    for ch in s:
        if not (63 <= ord(ch) <= 126):
            raise ValueError(f"invalid graph6 character {ch!r}")

    if ord(s[0]) == 126:
        if len(s) < 4:
            raise ValueError("truncated graph6 size field")
        if ord(s[1]) == 126:
            raise ValueError("graph6 large-size encoding (n > 258047) not supported")
        a, b, c = (ord(ch) - 63 for ch in s[1:4])
        n = (a << 12) | (b << 6) | c
        if n <= _SMALL_N_MAX:
            raise ValueError(f"non-minimal graph6 size encoding for n={n}")
        body = s[4:]
    else:
        n = ord(s[0]) - 63
        body = s[1:]

    nbits = n * (n - 1) // 2
    expected_len = (nbits + 5) // 6
    if len(body) != expected_len:
        raise ValueError(f"graph6 body has {len(body)} bytes, expected {expected_len} for n={n}")

    bits = []
    for ch in body:
        word = ord(ch) - 63
        for shift in range(5, -1, -1):
            bits.append((word >> shift) & 1)
    if any(bits[nbits:]):
        raise ValueError("nonzero padding bits in graph6 body")

    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return Graph(n, tuple(adj))


def _node_name(g: Graph, v: int) -> str:
    if g.labels is not None:
        return str(g.labels[v])
    return str(v)


def write_dot(g: Graph, name: str = "G") -> str:
    """Render as a Graphviz DOT graph, one node and edge per line."""
    lines = [f"graph {name} {{"]
    for v in range(g.n):
        lines.append(f'  {v} [label="{_node_name(g, v)}"];')
    for u, v in g.edges():
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"


def write_edgelist(g: Graph) -> str:
    """Plain text: first line is the vertex count, then one edge per line."""
    lines = [str(g.n)]
    for u, v in g.edges():
        lines.append(f"{u} {v}")
    return "\n".join(lines) + "\n"
