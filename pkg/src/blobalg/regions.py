"""Local regions, box configurations, and standard fillings.

A local region is a weight vector c (sorted, nonnegative, all integers or
all half-integers) together with a subset J of the potential-wall roots
P(c).  The region determines a configuration of 2k boxes on diagonals with
markings on the four diagonals +-r1, +-r2; its standard fillings are the
symmetric bijective labelings obeying the diagonal and marking rules, and
they index the basis of the corresponding calibrated module.

Roots are tagged tuples: ("e", i) for eps_i, ("d", i, j) for eps_j - eps_i
and ("s", i, j) for eps_j + eps_i, always with 0 < i < j.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, FrozenSet, Iterable, List, Optional, Sequence, Tuple

Root = Tuple
HALF = Fraction(1, 2)


class RegionError(ValueError):
    pass


def _fr(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


@dataclass(frozen=True)
class RegionParams:
    r1: Fraction
    r2: Fraction

    def __post_init__(self):
        object.__setattr__(self, "r1", _fr(self.r1))
        object.__setattr__(self, "r2", _fr(self.r2))
        if (self.r1.denominator == self.r2.denominator
                and self.r2 <= self.r1 + 1):
            raise RegionError("need r2 > r1 + 1 when r1, r2 share an integrality class")

    def marked_diagonals(self) -> Tuple[Fraction, ...]:
        return (self.r1, -self.r1, self.r2, -self.r2)


def weight_vector(values: Iterable) -> Tuple[Fraction, ...]:
    c = tuple(_fr(v) for v in values)
    if any(v < 0 for v in c) or any(c[i] > c[i + 1] for i in range(len(c) - 1)):
        raise RegionError("weights must satisfy 0 <= c_1 <= ... <= c_k")
    denoms = {v.denominator for v in c}
    if not denoms <= {1} and not denoms <= {2}:
        raise RegionError("weights must be all integers or all half-integers")
    return c


def compute_root_sets(c: Sequence[Fraction], params: RegionParams
                      ) -> Tuple[FrozenSet[Root], FrozenSet[Root]]:
    """The vanishing set Z(c) and the potential-wall set P(c)."""
    k = len(c)
    zset, pset = set(), set()
    for i in range(1, k + 1):
        if c[i - 1] == 0:
            zset.add(("e", i))
        if c[i - 1] in (params.r1, -params.r1, params.r2, -params.r2):
            pset.add(("e", i))
    for i in range(1, k + 1):
        for j in range(i + 1, k + 1):
            diff = c[j - 1] - c[i - 1]
            tot = c[j - 1] + c[i - 1]
            if diff == 0:
                zset.add(("d", i, j))
            if tot == 0:
                zset.add(("s", i, j))
            if diff in (1, -1):
                pset.add(("d", i, j))
            if tot in (1, -1):
                pset.add(("s", i, j))
    return frozenset(zset), frozenset(pset)


def root_sort_key(r: Root) -> Tuple:
    order = {"e": 0, "d": 1, "s": 2}
    return (order[r[0]],) + tuple(r[1:])


def render_root(r: Root) -> str:
    if r[0] == "e":
        return "e%d" % r[1]
    if r[0] == "d":
        return "e%d-e%d" % (r[2], r[1])
    return "e%d+e%d" % (r[2], r[1])


def parse_root(s: str) -> Root:
    s = s.replace(" ", "")
    if "-" in s[1:]:
        hi, lo = s.split("-")
        return ("d", int(lo[1:]), int(hi[1:]))
    if "+" in s:
        hi, lo = s.split("+")
        return ("s", int(lo[1:]), int(hi[1:]))
    return ("e", int(s[1:]))


@dataclass(frozen=True)
class LocalRegion:
    c: Tuple[Fraction, ...]
    J: FrozenSet[Root]
    params: RegionParams

    def __post_init__(self):
        object.__setattr__(self, "c", weight_vector(self.c))
        object.__setattr__(self, "J", frozenset(self.J))
        _, pset = compute_root_sets(self.c, self.params)
        if not self.J <= pset:
            raise RegionError("J must be a subset of P(c); extra roots %s"
                              % sorted(self.J - pset, key=root_sort_key))

    @property
    def k(self) -> int:
        return len(self.c)

    def root_sets(self) -> Tuple[FrozenSet[Root], FrozenSet[Root]]:
        return compute_root_sets(self.c, self.params)

    def __repr__(self) -> str:
        return "LocalRegion(c=%s, J={%s})" % (
            tuple(str(v) for v in self.c),
            ",".join(render_root(r) for r in sorted(self.J, key=root_sort_key)))


def region_to_json(region: LocalRegion) -> dict:
    return {"c": [str(v) for v in region.c],
            "J": [render_root(r) for r in sorted(region.J, key=root_sort_key)],
            "r1": str(region.params.r1), "r2": str(region.params.r2)}


def region_from_json(obj) -> LocalRegion:
    if isinstance(obj, str):
        obj = json.loads(obj)
    params = RegionParams(Fraction(obj["r1"]), Fraction(obj["r2"]))
    return LocalRegion(tuple(Fraction(v) for v in obj["c"]),
                       frozenset(parse_root(s) for s in obj["J"]), params)


# ---------------------------------------------------------------------------
# box configurations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class BoxConfig:
    """Constraint data of a 2k-box configuration.

    `diag` maps box indices -k..-1,1..k to diagonals.  `same_diag` lists the
    boxes of each diagonal NW to SE.  `pair_rel` holds the oriented relation
    for each constrained adjacent-diagonal pair (upper, lower): True for NW,
    False for SE; the first box always sits on the higher diagonal.
    `marker_side` gives "NW" or "SE" for each box on a marked diagonal.
    Two configurations are equal iff this data agrees.
    """

    k: int
    diag: Tuple[Tuple[int, Fraction], ...]
    same_diag: Tuple[Tuple[Fraction, Tuple[int, ...]], ...]
    pair_rel: Tuple[Tuple[Tuple[int, int], bool], ...]
    marker_side: Tuple[Tuple[int, str], ...]
    placement: Tuple[Tuple[int, Tuple[Fraction, Fraction]], ...] = field(compare=False)

    def diag_of(self, i: int) -> Fraction:
        return dict(self.diag)[i]

    def rel_map(self) -> Dict[Tuple[int, int], bool]:
        return dict(self.pair_rel)

    def boxes(self) -> List[int]:
        return [i for i, _ in self.diag]


def _box_diagonals(region: LocalRegion) -> Dict[int, Fraction]:
    out = {}
    for i, ci in enumerate(region.c, start=1):
        out[i] = ci
        out[-i] = -ci
    return out


def _constraints(region: LocalRegion) -> Tuple[Dict[Tuple[int, int], bool],
                                               Dict[int, str]]:
    """Oriented pair relations and marker sides demanded by (c, J)."""
    zset, pset = region.root_sets()
    rel: Dict[Tuple[int, int], bool] = {}
    for root in pset:
        if root[0] == "d":
            _, i, j = root
            rel[(j, i)] = root in region.J
        elif root[0] == "s":
            _, i, j = root
            rel[(j, -i)] = root in region.J
    sides: Dict[int, str] = {}
    for root in pset:
        if root[0] == "e":
            i = root[1]
            sides[i] = "NW" if root in region.J else "SE"
            sides[-i] = "SE" if root in region.J else "NW"
    return rel, sides


def build_config(region: LocalRegion) -> BoxConfig:
    """Realize the (c, J) constraints as planar boxes; error if impossible."""
    diag = _box_diagonals(region)
    rel, sides = _constraints(region)

    groups: Dict[Fraction, List[int]] = {}
    for i in sorted(diag, key=lambda b: (diag[b], b)):
        groups.setdefault(diag[i], []).append(i)

    # difference constraints row_y >= row_x + w, with marker pseudo-nodes
    edges: List[Tuple[object, object, int, Tuple[int, int]]] = []
    for d, boxes in groups.items():
        for b1, b2 in zip(boxes, boxes[1:]):
            edges.append((b1, b2, 1, (b1, b2)))
    for (p, q), is_nw in rel.items():
        if is_nw:
            edges.append((p, q, 1, (p, q)))
            edges.append((-q, -p, 1, (p, q)))
        else:
            edges.append((q, p, 0, (p, q)))
            edges.append((-p, -q, 0, (p, q)))
    marked = set(region.params.marked_diagonals())
    for b, side in sides.items():
        m = ("marker", diag[b])
        if side == "NW":
            edges.append((b, m, 1, (b, b)))
        else:
            edges.append((m, b, 0, (b, b)))

    nodes = list(diag) + [("marker", d) for d in marked if d in groups]
    row = {n: 0 for n in nodes}
    edges = [(x, y, w, wit) for x, y, w, wit in edges if x in row and y in row]
    for _ in range(len(nodes) + 1):
        changed = False
        for x, y, w, wit in edges:
            if row[y] < row[x] + w:
                row[y] = row[x] + w
                changed = True
        if not changed:
            break
    else:
        for x, y, w, wit in edges:
            if row[y] < row[x] + w:
                raise RegionError("unsatisfiable constraints at pair %s" % (wit,))

    placement = tuple(sorted((b, (Fraction(row[b]), Fraction(row[b]) + diag[b]))
                             for b in diag))
    return BoxConfig(
        k=region.k,
        diag=tuple(sorted(diag.items())),
        same_diag=tuple(sorted((d, tuple(bs)) for d, bs in groups.items())),
        pair_rel=tuple(sorted(rel.items())),
        marker_side=tuple(sorted((b, s) for b, s in sides.items())),
        placement=placement,
    )


# ---------------------------------------------------------------------------
# standard fillings
# ---------------------------------------------------------------------------

Filling = Tuple[int, ...]  # values S(box_1), ..., S(box_k)


def _filling_constraints(config: BoxConfig) -> List[Tuple[int, int]]:
    """Pairs (p, q) of box indices with S(p) < S(q) required."""
    less: List[Tuple[int, int]] = []
    for _, boxes in config.same_diag:
        for b1, b2 in zip(boxes, boxes[1:]):
            less.append((b1, b2))
    for (p, q), is_nw in config.pair_rel:
        if is_nw:
            less.append((p, q))
        else:
            less.append((q, p))
    return less


def enumerate_fillings(config: BoxConfig) -> List[Filling]:
    """All standard fillings, as value tuples on the positive boxes."""
    k = config.k
    less = _filling_constraints(config)
    sides = dict(config.marker_side)

    # constraints indexed by the positive box they mention
    def value(assign: Dict[int, int], b: int) -> Optional[int]:
        if abs(b) in assign:
            v = assign[abs(b)]
            return v if b > 0 else -v
        return None

    order = sorted(range(1, k + 1), key=lambda i: (config.diag_of(i), i))
    results: List[Filling] = []
    assign: Dict[int, int] = {}

    def consistent(b: int) -> bool:
        for p, q in less:
            vp = value(assign, p)
            vq = value(assign, q)
            if vp is not None and vq is not None and not vp < vq:
                return False
        side = sides.get(b)
        if side == "NW" and assign[b] > 0:
            return False
        if side == "SE" and assign[b] < 0:
            return False
        return True

    def rec(pos: int, used: FrozenSet[int]) -> None:
        if pos == len(order):
            results.append(tuple(assign[i] for i in range(1, k + 1)))
            return
        b = order[pos]
        for m in range(1, k + 1):
            if m in used:
                continue
            for v in (-m, m):
                assign[b] = v
                if consistent(b):
                    rec(pos + 1, used | {m})
        del assign[b]

    rec(0, frozenset())
    return sorted(results)


def wc_vector(config: BoxConfig, filling: Filling) -> Dict[int, Fraction]:
    """(wc)_j = diagonal of the box containing label j, for j in -k..-1,1..k."""
    diag = dict(config.diag)
    out: Dict[int, Fraction] = {}
    for i, v in enumerate(filling, start=1):
        out[v] = diag[i]
        out[-v] = diag[-i]
    return out


def is_skew(region: LocalRegion, config: Optional[BoxConfig] = None) -> bool:
    """True iff every filling avoids the degenerate label coincidences."""
    if config is None:
        config = build_config(region)
    k = region.k
    for filling in enumerate_fillings(config):
        wc = wc_vector(config, filling)
        if wc[1] == 0:
            return False
        if k >= 2 and (wc[2] == 0 or wc[1] == -wc[2]):
            return False
        if any(wc[i] == wc[i + 1] for i in range(1, k)):
            return False
        if any(wc[i] == wc[i + 2] for i in range(1, k - 1)):
            return False
    return True


# ---------------------------------------------------------------------------
# the two-row shapes and the vanishing conditions
# ---------------------------------------------------------------------------

def two_row_region(k: int, c0, params: RegionParams,
                   marker_J: Iterable[Root] = ()) -> LocalRegion:
    """The region of the canonical two-row shape with first-row diagonals
    c0, c0+1, ..., c0+k-1; marker roots may be chosen freely via marker_J."""
    c0 = _fr(c0)
    placement = _two_row_placement(k, c0)
    diag = {b: d for b, (d, _, _) in placement.items()}
    c = weight_vector(sorted(diag[i] for i in range(1, k + 1)))
    _, pset = compute_root_sets(c, params)
    J = set(r for r in marker_J)
    for root in pset:
        if root[0] == "e":
            continue
        if _two_row_rel(placement, root):
            J.add(root)
    return LocalRegion(c, frozenset(J), params)


def _two_row_placement(k: int, c0: Fraction) -> Dict[int, Tuple[Fraction, int, Fraction]]:
    """Box index -> (diagonal, row, col) for the canonical two-row shape."""
    boxes = []  # (diag, row, col)
    for m in range(k):
        d = c0 + m
        boxes.append((d, 0, d))
        boxes.append((-d, 1, -d + 1))
    boxes.sort(key=lambda t: (t[0], t[1]))
    out: Dict[int, Tuple[Fraction, int, Fraction]] = {}
    for pos, (d, r, col) in enumerate(boxes):
        idx = pos - k if pos < k else pos - k + 1
        out[idx] = (d, r, col)
    return out


def _two_row_rel(placement, root: Root) -> bool:
    """True if the root's oriented pair sits NW in the two-row shape."""
    if root[0] == "d":
        _, i, j = root
        first, second = j, i
    else:
        _, i, j = root
        first, second = j, -i
    _, r1_, _ = placement[first]
    _, r2_, _ = placement[second]
    return r1_ <= r2_ - 1


def is_tl_shape(region: LocalRegion, config: Optional[BoxConfig] = None) -> bool:
    """True iff the configuration is a 180-degree symmetric two-row shape."""
    k = region.k
    c = region.c
    candidates = {c[-1] - (k - 1), -c[-1]}
    zset, pset = region.root_sets()
    for c0 in candidates:
        placement = _two_row_placement(k, c0)
        expected_c = tuple(sorted(placement[i][0] for i in range(1, k + 1)))
        if expected_c != c:
            continue
        # the full diagonal multisets agree by symmetry; compare relations
        ok = True
        for root in pset:
            if root[0] == "e":
                continue
            if _two_row_rel(placement, root) != (root in region.J):
                ok = False
                break
        if not ok:
            continue
        # same-diagonal scan order must match the index assignment
        diag = _box_diagonals(region)
        by_diag: Dict[Fraction, List[int]] = {}
        for b in sorted(diag, key=lambda b: (diag[b], b)):
            by_diag.setdefault(diag[b], []).append(b)
        target: Dict[Fraction, List[int]] = {}
        for b, (d, r, _) in sorted(placement.items(), key=lambda t: (t[1][0], t[1][1])):
            target.setdefault(d, []).append(b)
        if by_diag == target:
            return True
    return False


_BOUNDARY_CASES = {
    "p0_e12": (lambda r1, r2: (r1, r2)),
    "p0_12e": (lambda r1, r2: (-r1, -r2)),
    "p0v_e12": (lambda r1, r2: (-r1, r2)),
    "p0v_12e": (lambda r1, r2: (r1, -r2)),
}


def vanishing_predicates(region: LocalRegion,
                         config: Optional[BoxConfig] = None) -> dict:
    """Per-idempotent report of the combinatorial annihilation conditions."""
    if config is None:
        config = build_config(region)
    k = region.k
    fillings = enumerate_fillings(config)
    r1, r2 = region.params.r1, region.params.r2
    report = {"fillings": len(fillings)}
    witnesses = {}

    inner_ok = True
    inner_witness = None
    for filling in fillings:
        wc = wc_vector(config, filling)
        for i in range(1, k - 1):
            if not (wc[i] == wc[i + 1] - 1 or wc[i] == wc[i + 2] - 1
                    or wc[i + 1] == wc[i + 2] - 1):
                inner_ok = False
                inner_witness = (filling, i)
                break
        if not inner_ok:
            break
    report["p_i_111"] = inner_ok
    witnesses["p_i_111"] = inner_witness

    for name, pick in _BOUNDARY_CASES.items():
        if k < 2:
            report[name] = True
            continue
        v1, v2 = pick(r1, r2)
        ok = True
        witness = None
        for filling in fillings:
            wc = wc_vector(config, filling)
            if not (wc[1] in (v1, v2) or wc[2] in (v1, v2)
                    or wc[2] == wc[1] + 1 or wc[2] == -wc[1] + 1):
                ok = False
                witness = filling
                break
        report[name] = ok
        witnesses[name] = witness
    report["is_tl_module"] = all(report[n] for n in
                                 ("p_i_111",) + tuple(_BOUNDARY_CASES))
    report["witnesses"] = {n: w for n, w in witnesses.items() if w is not None}
    return report


# ---------------------------------------------------------------------------
# region enumeration
# ---------------------------------------------------------------------------

def enumerate_regions(k: int, params: RegionParams, diagonal_bound,
                      classes: Sequence[str] = ("integer", "half"),
                      require_skew: bool = False) -> List[LocalRegion]:
    """All (c, J) with 0 <= c_i <= bound and at least one standard filling."""
    bound = _fr(diagonal_bound)
    found: List[LocalRegion] = []
    seen = set()
    for cls in classes:
        start = Fraction(0) if cls == "integer" else HALF
        values = []
        v = start
        while v <= bound:
            values.append(v)
            v += 1
        for c in _sorted_tuples(values, k):
            region0 = LocalRegion(c, frozenset(), params)
            _, pset = region0.root_sets()
            proots = sorted(pset, key=root_sort_key)
            for mask in range(1 << len(proots)):
                J = frozenset(r for b, r in enumerate(proots) if mask >> b & 1)
                region = LocalRegion(c, J, params)
                key = (region.c, region.J)
                if key in seen:
                    continue
                seen.add(key)
                try:
                    config = build_config(region)
                except RegionError:
                    continue
                if not enumerate_fillings(config):
                    continue
                if require_skew and not is_skew(region, config):
                    continue
                found.append(region)
    return found


def _sorted_tuples(values: List[Fraction], k: int) -> Iterable[Tuple[Fraction, ...]]:
    if k == 0:
        yield ()
        return
    for i, v in enumerate(values):
        for rest in _sorted_tuples(values[i:], k - 1):
            yield (v,) + rest


# ---------------------------------------------------------------------------
# text art
# ---------------------------------------------------------------------------

def render_config(config: BoxConfig) -> str:
    """Grid rendering with one cell per box, labeled by box index."""
    placement = dict(config.placement)
    scale = 1 if all((c - r).denominator == 1 for _, (r, c) in config.placement) else 2
    cells = {}
    for b, (r, col) in placement.items():
        cells[(int(r * scale) if scale == 2 else int(r), int(col * scale))] = b
    if not cells:
        return "(empty)"
    rows = sorted({r for r, _ in cells})
    cols = range(min(c for _, c in cells), max(c for _, c in cells) + 1)
    lines = []
    for r in rows:
        line = []
        for col in cols:
            b = cells.get((r, col))
            line.append("%4s" % (b if b is not None else "."))
        lines.append("".join(line))
    return "\n".join(lines)
