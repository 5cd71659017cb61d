"""Planar two-boundary Temperley-Lieb diagrams and their stacking product.

A diagram has k top dots, k bottom dots and an even number of marked points
on each of two walls, joined by a non-crossing perfect matching with no arc
returning to the wall it started from.  Multiplication stacks one picture on
top of another and removes closed loops and wall-to-wall return arcs with
the scalar coefficients of the blob calculus:

    closed loop                      ->  -(u + 1/u)
    left arc, even depth             ->  (u0/u + u/u0) / a0
    left arc, odd depth              ->  -(u0 + 1/u0) / a0
    right arc                        ->  same with uk, ak

where the depth of a return arc counts the attachment points of other
strands below it on its wall, in the glued picture before any removal.
"""

from __future__ import annotations

import hashlib
import json
import os
from typing import Dict, Iterable, List, Optional, Set, Tuple

from .scalars import Scalar, bb, render as render_scalar, to_json as scalar_to_json, \
    from_json as scalar_from_json

Node = Tuple[str, int]  # ("T", i), ("B", i), ("L", j), ("R", j)

_KIND_ORDER = {"T": 0, "B": 1, "L": 2, "R": 3}


class DiagramError(ValueError):
    """Invalid diagram data; `reason` is a stable machine-readable tag."""

    def __init__(self, reason: str, message: str):
        super().__init__(message)
        self.reason = reason


def _node_key(n: Node) -> Tuple[int, int]:
    return (_KIND_ORDER[n[0]], n[1])


class TLDiagram:
    """Canonical non-crossing two-boundary diagram."""

    __slots__ = ("k", "L", "R", "pairs", "_hash")

    def __init__(self, k: int, L: int, R: int,
                 pairs: Iterable[Tuple[Node, Node]], _trusted: bool = False):
        self.k = k
        self.L = L
        self.R = R
        canon = tuple(sorted((tuple(sorted(p, key=_node_key)) for p in pairs),
                             key=lambda p: (_node_key(p[0]), _node_key(p[1]))))
        self.pairs = canon
        self._hash = hash((k, L, R, canon))
        if not _trusted:
            _validate(self)

    def __eq__(self, other) -> bool:
        return (isinstance(other, TLDiagram) and self.k == other.k
                and self.L == other.L and self.R == other.R
                and self.pairs == other.pairs)

    def __hash__(self) -> int:
        return self._hash

    def __lt__(self, other: "TLDiagram") -> bool:
        return (self.L, self.R, self.pairs) < (other.L, other.R, other.pairs)

    def __repr__(self) -> str:
        body = " ".join("%s%d-%s%d" % (a[0], a[1], b[0], b[1]) for a, b in self.pairs)
        return "<TLDiagram k=%d L=%d R=%d %s>" % (self.k, self.L, self.R, body)

    def wall_grade(self) -> int:
        return sum(1 for a, b in self.pairs if a[0] == "L" and b[0] == "R"
                   or a[0] == "R" and b[0] == "L")

    def through_strands(self) -> int:
        return sum(1 for a, b in self.pairs
                   if {a[0], b[0]} == {"T", "B"})


def _boundary_order(k: int, L: int, R: int) -> List[Node]:
    """Clockwise boundary: top left-to-right, right wall down, bottom
    right-to-left, left wall up."""
    order: List[Node] = [("T", i) for i in range(1, k + 1)]
    order += [("R", j) for j in range(1, R + 1)]
    order += [("B", i) for i in range(k, 0, -1)]
    order += [("L", j) for j in range(L, 0, -1)]
    return order


def _validate(d: TLDiagram) -> None:
    if d.L % 2 or d.R % 2:
        raise DiagramError("wall_parity", "odd wall point count L=%d R=%d" % (d.L, d.R))
    nodes = _boundary_order(d.k, d.L, d.R)
    node_set = set(nodes)
    seen: Set[Node] = set()
    for a, b in d.pairs:
        for n in (a, b):
            if n not in node_set:
                raise DiagramError("bad_node", "node %r out of range" % (n,))
            if n in seen:
                raise DiagramError("degree", "node %r used twice" % (n,))
            seen.add(n)
        if a == b:
            raise DiagramError("degree", "self-paired node %r" % (a,))
        if a[0] == b[0] and a[0] in ("L", "R"):
            raise DiagramError("same_wall", "arc %r-%r returns to its wall" % (a, b))
    if seen != node_set:
        raise DiagramError("degree", "matching is not perfect (%d of %d nodes)"
                           % (len(seen), len(node_set)))
    pos = {n: i for i, n in enumerate(nodes)}
    chords = sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in d.pairs)
    stack: List[int] = []
    for lo, hi in sorted(chords):
        while stack and stack[-1] < lo:
            stack.pop()
        if stack and stack[-1] < hi:
            raise DiagramError("crossing", "chords interleave")
        stack.append(hi)


def make_diagram(k: int, L: int, R: int,
                 pairs: Iterable[Tuple[Node, Node]]) -> TLDiagram:
    return TLDiagram(k, L, R, pairs)


def identity_diagram(k: int) -> TLDiagram:
    return TLDiagram(k, 0, 0, [(("T", i), ("B", i)) for i in range(1, k + 1)],
                     _trusted=True)


def e0_diagram(k: int) -> TLDiagram:
    pairs = [(("T", 1), ("L", 1)), (("B", 1), ("L", 2))]
    pairs += [(("T", i), ("B", i)) for i in range(2, k + 1)]
    return TLDiagram(k, 2, 0, pairs, _trusted=True)


def ek_diagram(k: int) -> TLDiagram:
    pairs = [(("T", k), ("R", 1)), (("B", k), ("R", 2))]
    pairs += [(("T", i), ("B", i)) for i in range(1, k)]
    return TLDiagram(k, 0, 2, pairs, _trusted=True)


def e_diagram(k: int, i: int) -> TLDiagram:
    if not 1 <= i <= k - 1:
        raise DiagramError("index", "e_%d needs 1 <= i <= k-1 = %d" % (i, k - 1))
    pairs = [(("T", i), ("T", i + 1)), (("B", i), ("B", i + 1))]
    pairs += [(("T", j), ("B", j)) for j in range(1, k + 1) if j not in (i, i + 1)]
    return TLDiagram(k, 0, 0, pairs, _trusted=True)


def generator(k: int, which) -> TLDiagram:
    """which is "e0", "ek", or an inner index 1 <= i <= k-1."""
    if which == "e0":
        return e0_diagram(k)
    if which == "ek":
        return ek_diagram(k)
    return e_diagram(k, int(which))


def through_strands(d: TLDiagram) -> int:
    return d.through_strands()


def filtration_member(d: TLDiagram, j: int) -> bool:
    return d.through_strands() <= j


# ---------------------------------------------------------------------------
# linear combinations
# ---------------------------------------------------------------------------

class TLElement:
    """Finite Scalar-linear combination of diagrams with common k."""

    __slots__ = ("k", "coeffs")

    def __init__(self, k: int, coeffs: Optional[Dict[TLDiagram, Scalar]] = None):
        self.k = k
        self.coeffs: Dict[TLDiagram, Scalar] = {}
        if coeffs:
            for d, c in coeffs.items():
                if d.k != k:
                    raise DiagramError("mixed_k", "diagram k=%d in element k=%d" % (d.k, k))
                if not c.is_zero():
                    self.coeffs[d] = c

    @staticmethod
    def from_diagram(d: TLDiagram, coeff: Scalar = None) -> "TLElement":
        return TLElement(d.k, {d: coeff if coeff is not None else Scalar.one()})

    @staticmethod
    def zero(k: int) -> "TLElement":
        return TLElement(k)

    @staticmethod
    def one(k: int) -> "TLElement":
        return TLElement.from_diagram(identity_diagram(k))

    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other) -> bool:
        return (isinstance(other, TLElement) and self.k == other.k
                and self.coeffs == other.coeffs)

    def __add__(self, other: "TLElement") -> "TLElement":
        out = dict(self.coeffs)
        for d, c in other.coeffs.items():
            s = out[d] + c if d in out else c
            if s.is_zero():
                out.pop(d, None)
            else:
                out[d] = s
        r = TLElement(self.k)
        r.coeffs = out
        return r

    def __neg__(self) -> "TLElement":
        r = TLElement(self.k)
        r.coeffs = {d: -c for d, c in self.coeffs.items()}
        return r

    def __sub__(self, other: "TLElement") -> "TLElement":
        return self + (-other)

    def scale(self, c: Scalar) -> "TLElement":
        if c.is_zero():
            return TLElement(self.k)
        r = TLElement(self.k)
        r.coeffs = {d: x * c for d, x in self.coeffs.items()}
        return r

    def __mul__(self, other: "TLElement") -> "TLElement":
        if self.k != other.k:
            raise DiagramError("mixed_k", "product of k=%d and k=%d elements"
                               % (self.k, other.k))
        out: Dict[TLDiagram, Scalar] = {}
        for d1, c1 in self.coeffs.items():
            for d2, c2 in other.coeffs.items():
                coeff, prod = multiply_diagrams(d1, d2)
                total = c1 * c2 * coeff
                if prod in out:
                    s = out[prod] + total
                    if s.is_zero():
                        del out[prod]
                    else:
                        out[prod] = s
                elif not total.is_zero():
                    out[prod] = total
        r = TLElement(self.k)
        r.coeffs = out
        return r

    def __repr__(self) -> str:
        if not self.coeffs:
            return "<TLElement 0 (k=%d)>" % self.k
        bits = ["(%s)*%r" % (render_scalar(c), d) for d, c in sorted(
            self.coeffs.items(), key=lambda t: t[0].pairs)]
        return " + ".join(bits)


_LOOP: Optional[Scalar] = None
_ARC_COEFFS: Dict[Tuple[str, int], Scalar] = {}


def _loop_value() -> Scalar:
    global _LOOP
    if _LOOP is None:
        _LOOP = -bb("t")
    return _LOOP


def _arc_value(side: str, depth: int) -> Scalar:
    key = (side, depth % 2)
    if key not in _ARC_COEFFS:
        if side == "L":
            val = bb("t0/t") / Scalar.var("a0") if depth % 2 == 0 \
                else -bb("t0") / Scalar.var("a0")
        else:
            val = bb("tk/t") / Scalar.var("ak") if depth % 2 == 0 \
                else -bb("tk") / Scalar.var("ak")
        _ARC_COEFFS[key] = val
    return _ARC_COEFFS[key]


def multiply_diagrams(x: TLDiagram, y: TLDiagram,
                      fold_rng=None) -> Tuple[Scalar, TLDiagram]:
    """Stack x above y and reduce; returns (coefficient, diagram).

    `fold_rng` optionally shuffles the order in which removed components
    are folded into the coefficient; the result never depends on it
    because every depth is read off the frozen glued picture.
    """
    if x.k != y.k:
        raise DiagramError("mixed_k", "product of k=%d and k=%d" % (x.k, y.k))
    k = x.k

    adj: Dict[Node, List[Node]] = {}

    def link(a: Node, b: Node) -> None:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    # composite node names: x's walls above y's walls
    def map_x(n: Node) -> Node:
        kind, i = n
        if kind == "T":
            return ("T", i)
        if kind == "B":
            return ("M", i)
        return ("L" if kind == "L" else "R", i)

    def map_y(n: Node) -> Node:
        kind, i = n
        if kind == "T":
            return ("M", i)
        if kind == "B":
            return ("B", i)
        if kind == "L":
            return ("L", i + x.L)
        return ("R", i + x.R)

    for a, b in x.pairs:
        link(map_x(a), map_x(b))
    for a, b in y.pairs:
        link(map_y(a), map_y(b))

    # trace components
    seen: Set[Node] = set()
    loops = 0
    open_paths: List[Tuple[Node, Node]] = []  # endpoint pairs

    for start in list(adj):
        if start in seen or start[0] == "M":
            continue
        # walk from an outer endpoint
        seen.add(start)
        prev, cur = start, adj[start][0]
        while cur[0] == "M":
            seen.add(cur)
            nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
            prev, cur = cur, nxt
        seen.add(cur)
        open_paths.append((start, cur))
    for start in adj:
        if start not in seen:
            # closed loop through mid nodes only
            loops += 1
            prev, cur = start, adj[start][0]
            seen.add(start)
            while cur != start:
                seen.add(cur)
                nxt = adj[cur][0] if adj[cur][0] != prev else adj[cur][1]
                prev, cur = cur, nxt

    # stable component ids for endpoint ownership
    comp_of: Dict[Node, int] = {}
    for idx, (a, b) in enumerate(open_paths):
        comp_of[a] = idx
        comp_of[b] = idx

    def wall_positions(side: str) -> List[Node]:
        total = x.L + y.L if side == "L" else x.R + y.R
        return [(side, j) for j in range(1, total + 1)]

    arcs: List[Tuple[str, int, int, int]] = []  # (side, low position, comp, depth)
    survivors: List[int] = []
    for idx, (a, b) in enumerate(open_paths):
        if a[0] == b[0] and a[0] in ("L", "R"):
            side = a[0]
            low = max(a[1], b[1])
            arcs.append((side, low, idx, 0))
        else:
            survivors.append(idx)

    # depths on the frozen picture: other components' points strictly below
    frozen_arcs: List[Tuple[str, int, int]] = []
    for side, low, idx, _ in arcs:
        depth = 0
        for node in wall_positions(side):
            if node[1] > low and node in comp_of and comp_of[node] != idx:
                depth += 1
        frozen_arcs.append((side, depth, idx))

    coeff = Scalar.one()
    folds: List[Scalar] = [_loop_value()] * loops
    folds += [_arc_value(side, depth) for side, depth, _ in frozen_arcs]
    if fold_rng is not None:
        fold_rng.shuffle(folds)
    for val in folds:
        coeff = coeff * val

    # rebuild the surviving picture
    arc_ids = {idx for _, _, idx in frozen_arcs}
    new_left = [n for n in wall_positions("L")
                if n in comp_of and comp_of[n] not in arc_ids]
    new_right = [n for n in wall_positions("R")
                 if n in comp_of and comp_of[n] not in arc_ids]
    renumber: Dict[Node, Node] = {}
    for j, n in enumerate(new_left, start=1):
        renumber[n] = ("L", j)
    for j, n in enumerate(new_right, start=1):
        renumber[n] = ("R", j)

    def out_node(n: Node) -> Node:
        if n[0] in ("L", "R"):
            return renumber[n]
        return n

    pairs = [(out_node(open_paths[idx][0]), out_node(open_paths[idx][1]))
             for idx in survivors]
    result = TLDiagram(k, len(new_left), len(new_right), pairs)
    return coeff, result


def multiply(x: TLElement, y: TLElement) -> TLElement:
    return x * y


# ---------------------------------------------------------------------------
# basis enumeration
# ---------------------------------------------------------------------------

def _matchings(nodes: List[Node], target_lines: int) -> List[List[Tuple[Node, Node]]]:
    """Non-crossing perfect matchings of the node cycle with no same-wall
    arcs and exactly `target_lines` wall-to-wall edges."""
    out: List[List[Tuple[Node, Node]]] = []
    pairs: List[Tuple[Node, Node]] = []

    def rec(segments: Tuple[Tuple[int, ...], ...], lines: int) -> None:
        if lines > target_lines:
            return
        if not segments:
            if lines == target_lines:
                out.append(list(pairs))
            return
        seg = segments[0]
        rest = segments[1:]
        if not seg:
            rec(rest, lines)
            return
        a = nodes[seg[0]]
        for pos in range(1, len(seg), 2):
            b = nodes[seg[pos]]
            if a[0] in ("L", "R") and a[0] == b[0]:
                continue
            is_line = a[0] in ("L", "R") and b[0] in ("L", "R")
            pairs.append((a, b))
            rec((seg[1:pos], seg[pos + 1:]) + rest, lines + (1 if is_line else 0))
            pairs.pop()

    rec((tuple(range(len(nodes))),), 0)
    return out


def enumerate_basis(k: int, wall_grades: Iterable[int],
                    max_wall_grade_bound: int = 4,
                    cache_dir: Optional[str] = None) -> List[TLDiagram]:
    """All basis diagrams with wall grade in `wall_grades`, deterministic order."""
    grades = sorted(set(int(w) for w in wall_grades))
    if any(w < 0 for w in grades):
        raise DiagramError("grade", "wall grades must be nonnegative")
    if grades and grades[-1] > max_wall_grade_bound:
        raise DiagramError("grade_bound",
                           "requested grade %d exceeds bound %d"
                           % (grades[-1], max_wall_grade_bound))
    cached = _cache_load(k, grades, cache_dir)
    if cached is not None:
        return cached
    found: List[TLDiagram] = []
    for w in grades:
        for L in range(0, 2 * k + 2 * w + 1, 2):
            lw_tb = L - w  # wall points not used by wall lines
            if lw_tb < 0:
                continue
            for R in range(0, 2 * k + 2 * w + 1, 2):
                rw_tb = R - w
                if rw_tb < 0 or lw_tb + rw_tb > 2 * k:
                    continue
                nodes = _boundary_order(k, L, R)
                for pairing in _matchings(nodes, w):
                    try:
                        d = TLDiagram(k, L, R, pairing)
                    except DiagramError:
                        continue
                    found.append(d)
    found = sorted(set(found), key=lambda d: (d.wall_grade(), d.L, d.R, d.pairs))
    _cache_store(k, grades, found, cache_dir)
    return found


CACHE_ENV = "BLOBALG_CACHE_DIR"
_CACHE_VERSION = "1"


def _cache_path(k: int, grades: List[int], cache_dir: Optional[str]) -> Optional[str]:
    root = cache_dir or os.environ.get(CACHE_ENV)
    if not root:
        return None
    key = hashlib.sha256(json.dumps([_CACHE_VERSION, k, grades]).encode()).hexdigest()[:16]
    return os.path.join(root, "basis_k%d_%s.json" % (k, key))


def _cache_load(k: int, grades: List[int], cache_dir: Optional[str]):
    path = _cache_path(k, grades, cache_dir)
    if not path or not os.path.exists(path):
        return None
    try:
        with open(path) as f:
            data = json.load(f)
        return [diagram_from_json(obj) for obj in data]
    except (ValueError, KeyError, DiagramError):
        return None


def _cache_store(k: int, grades: List[int], found: List[TLDiagram],
                 cache_dir: Optional[str]) -> None:
    path = _cache_path(k, grades, cache_dir)
    if not path:
        return
    os.makedirs(os.path.dirname(path), exist_ok=True)
    with open(path, "w") as f:
        json.dump([diagram_to_json(d) for d in found], f)


# ---------------------------------------------------------------------------
# serialization and text art
# ---------------------------------------------------------------------------

def _node_name(n: Node) -> str:
    return "%s%d" % (n[0], n[1])


def _node_parse(s: str) -> Node:
    kind = s[0]
    if kind not in _KIND_ORDER:
        raise DiagramError("bad_node", "unknown node %r" % s)
    return (kind, int(s[1:]))


def diagram_to_json(d: TLDiagram) -> dict:
    return {"k": d.k, "L": d.L, "R": d.R,
            "pairs": [[_node_name(a), _node_name(b)] for a, b in d.pairs]}


def diagram_from_json(obj) -> TLDiagram:
    if isinstance(obj, str):
        obj = json.loads(obj)
    pairs = [(_node_parse(a), _node_parse(b)) for a, b in obj["pairs"]]
    return TLDiagram(int(obj["k"]), int(obj["L"]), int(obj["R"]), pairs)


def element_to_json(x: TLElement) -> dict:
    terms = [{"coeff": scalar_to_json(c), "diagram": diagram_to_json(d)}
             for d, c in sorted(x.coeffs.items(), key=lambda t: t[0].pairs)]
    return {"k": x.k, "terms": terms}


def element_from_json(obj) -> TLElement:
    if isinstance(obj, str):
        obj = json.loads(obj)
    coeffs = {}
    for term in obj["terms"]:
        d = diagram_from_json(term["diagram"])
        coeffs[d] = scalar_from_json(term["coeff"])
    return TLElement(int(obj["k"]), coeffs)


def render_diagram(d: TLDiagram) -> str:
    """Small text picture: dot rows, wall point counts, and the edge list."""
    top = " ".join("o" for _ in range(d.k))
    lines = ["%s| %s |%s" % ("L" * (d.L > 0), top, "R" * (d.R > 0)),
             "%s| %s |%s" % (" " * (d.L > 0), top, " " * (d.R > 0))]
    if d.L or d.R:
        lines.append("walls: L=%d R=%d" % (d.L, d.R))
    lines.append("edges: " + " ".join("%s-%s" % (_node_name(a), _node_name(b))
                                      for a, b in d.pairs))
    return "\n".join(lines)

