"""Formal words in the Hecke-type generators and their diagram expansion.

A ``GenExpr`` is a Scalar-linear combination of words over the letters

    T0, T0^-1, Ti, Ti^-1 (1 <= i <= k-1), Tk, Tk^-1, E0, Ei, Ek.

Words are never rewritten; all identities are checked after expanding into
the diagram algebra (or into module matrices).  The boundary letters expand
with their own symbols a0, ak, while the inner cap/cup letter carries the
global sign `a` with a*a = 1, so that Ti -> (inner diagram) + u.
"""

from __future__ import annotations

import re
from typing import Dict, Iterable, List, Optional, Tuple

from . import diagrams as dg
from .scalars import (A0, AK, ONE, Scalar, U, U0, UK, bb,
                      parse as parse_scalar, to_json as scalar_to_json,
                      from_json as scalar_from_json)

Letter = Tuple
Word = Tuple[Letter, ...]

T0 = ("T0", 1)
T0inv = ("T0", -1)
Tk = ("Tk", 1)
Tkinv = ("Tk", -1)
E0 = ("E0",)
Ek = ("Ek",)


def T(i: int, power: int = 1) -> Letter:
    return ("T", i, power)


def E(i: int) -> Letter:
    return ("E", i)


DEFAULT_A_SIGN = -1


class WordError(ValueError):
    pass


class GenExpr:
    """Finite Scalar-linear combination of generator words."""

    __slots__ = ("k", "terms")

    def __init__(self, k: int, terms: Optional[Dict[Word, Scalar]] = None):
        self.k = k
        self.terms: Dict[Word, Scalar] = {}
        if terms:
            for w, c in terms.items():
                _check_word(w, k)
                if not c.is_zero():
                    self.terms[w] = c

    @staticmethod
    def zero(k: int) -> "GenExpr":
        return GenExpr(k)

    @staticmethod
    def one(k: int) -> "GenExpr":
        return GenExpr(k, {(): ONE})

    @staticmethod
    def word(k: int, letters: Iterable[Letter], coeff: Scalar = None) -> "GenExpr":
        return GenExpr(k, {tuple(letters): coeff if coeff is not None else ONE})

    def __add__(self, other: "GenExpr") -> "GenExpr":
        out = dict(self.terms)
        for w, c in other.terms.items():
            s = out[w] + c if w in out else c
            if s.is_zero():
                out.pop(w, None)
            else:
                out[w] = s
        r = GenExpr(self.k)
        r.terms = out
        return r

    def __neg__(self) -> "GenExpr":
        r = GenExpr(self.k)
        r.terms = {w: -c for w, c in self.terms.items()}
        return r

    def __sub__(self, other: "GenExpr") -> "GenExpr":
        return self + (-other)

    def __mul__(self, other: "GenExpr") -> "GenExpr":
        out: Dict[Word, Scalar] = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 + w2
                c = c1 * c2
                if w in out:
                    s = out[w] + c
                    if s.is_zero():
                        del out[w]
                    else:
                        out[w] = s
                else:
                    out[w] = c
        r = GenExpr(self.k)
        r.terms = out
        return r

    def scale(self, c: Scalar) -> "GenExpr":
        if c.is_zero():
            return GenExpr(self.k)
        r = GenExpr(self.k)
        r.terms = {w: x * c for w, x in self.terms.items()}
        return r

    def word_count(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (isinstance(other, GenExpr) and self.k == other.k
                and self.terms == other.terms)

    def __repr__(self) -> str:
        if not self.terms:
            return "<GenExpr 0>"
        bits = []
        for w, c in sorted(self.terms.items()):
            body = "*".join(_letter_name(l) for l in w) or "1"
            bits.append("(%s)*%s" % (c, body))
        return " + ".join(bits)


def _letter_name(letter: Letter) -> str:
    if letter[0] == "T0":
        return "T0" if letter[1] == 1 else "T0^-1"
    if letter[0] == "Tk":
        return "Tk" if letter[1] == 1 else "Tk^-1"
    if letter[0] == "T":
        return "T%d" % letter[1] if letter[2] == 1 else "T%d^-1" % letter[1]
    if letter[0] == "E0":
        return "E0"
    if letter[0] == "Ek":
        return "Ek"
    return "E%d" % letter[1]


def _check_word(w: Word, k: int) -> None:
    for letter in w:
        if letter[0] in ("T", "E"):
            i = letter[1]
            if not 1 <= i <= k - 1:
                raise WordError("letter %s out of range for k=%d"
                                % (_letter_name(letter), k))


# ---------------------------------------------------------------------------
# expansion into the diagram algebra
# ---------------------------------------------------------------------------

_letter_cache: Dict[Tuple[int, Letter, int], dg.TLElement] = {}


def letter_element(k: int, letter: Letter, a_sign: int = DEFAULT_A_SIGN) -> dg.TLElement:
    key = (k, letter, a_sign)
    if key in _letter_cache:
        return _letter_cache[key]
    a = Scalar.from_int(a_sign)
    kind = letter[0]
    if kind == "E0":
        el = dg.TLElement.from_diagram(dg.e0_diagram(k))
    elif kind == "Ek":
        el = dg.TLElement.from_diagram(dg.ek_diagram(k))
    elif kind == "E":
        el = dg.TLElement.from_diagram(dg.e_diagram(k, letter[1]), a)
    elif kind == "T0":
        el = dg.TLElement(k, {dg.e0_diagram(k): A0,
                              dg.identity_diagram(k): U0 ** letter[1]})
    elif kind == "Tk":
        el = dg.TLElement(k, {dg.ek_diagram(k): AK,
                              dg.identity_diagram(k): UK ** letter[1]})
    elif kind == "T":
        el = dg.TLElement(k, {dg.e_diagram(k, letter[1]): ONE,
                              dg.identity_diagram(k): U ** letter[2]})
    else:
        raise WordError("unknown letter %r" % (letter,))
    _letter_cache[key] = el
    return el


def expand_to_tl(x: GenExpr, a_sign: int = DEFAULT_A_SIGN) -> dg.TLElement:
    """Substitute the generators by their diagram images and multiply out."""
    total = dg.TLElement.zero(x.k)
    for w, c in x.terms.items():
        cur = dg.TLElement.one(x.k)
        for letter in w:
            cur = cur * letter_element(x.k, letter, a_sign)
        total = total + cur.scale(c)
    return total


def verify_identity(lhs: GenExpr, rhs: GenExpr,
                    a_sign: int = DEFAULT_A_SIGN) -> Tuple[bool, dg.TLElement]:
    """Expand both sides to diagrams and compare; returns (equal, difference)."""
    if lhs.k != rhs.k:
        raise WordError("mismatched k")
    diff = expand_to_tl(lhs, a_sign) - expand_to_tl(rhs, a_sign)
    return diff.is_zero(), diff


# ---------------------------------------------------------------------------
# named elements
# ---------------------------------------------------------------------------

def murphy_word(k: int, j: int, inverse: bool = False) -> Word:
    """The commuting family member W_j, fully expanded into T-letters."""
    if not 1 <= j <= k:
        raise WordError("W_%d out of range for k=%d" % (j, k))
    w1: List[Letter] = [T(i, -1) for i in range(1, k)] + [Tk] \
        + [T(i) for i in range(k - 1, 0, -1)] + [T0]
    word = w1
    for m in range(2, j + 1):
        word = [T(m - 1)] + word + [T(m - 1)]
    if inverse:
        word = [_invert_letter(l) for l in reversed(word)]
    return tuple(word)


def _invert_letter(letter: Letter) -> Letter:
    if letter[0] in ("T0", "Tk"):
        return (letter[0], -letter[1])
    if letter[0] == "T":
        return ("T", letter[1], -letter[2])
    raise WordError("letter %r is not invertible" % (letter,))


def murphy_expr(k: int, j: int, inverse: bool = False) -> GenExpr:
    return GenExpr.word(k, murphy_word(k, j, inverse))


def ae(k: int, i: int, a_sign: int = DEFAULT_A_SIGN) -> GenExpr:
    """The cap/cup element a*e_i, whose diagram image carries coefficient 1."""
    return GenExpr.word(k, [E(i)], Scalar.from_int(a_sign))


def a0e0(k: int) -> GenExpr:
    return GenExpr.word(k, [E0], A0)


def akek(k: int) -> GenExpr:
    return GenExpr.word(k, [Ek], AK)


def _product(k: int, factors: Iterable[GenExpr]) -> GenExpr:
    out = GenExpr.one(k)
    for f in factors:
        out = out * f
    return out


def standard_element(name: str, k: int, a_sign: int = DEFAULT_A_SIGN) -> GenExpr:
    """Named elements of the blob-algebra identities; see `STANDARD_NAMES`."""
    even = k % 2 == 0

    def e_run(start: int, stop: int) -> List[GenExpr]:
        return [ae(k, i, a_sign) for i in range(start, stop + 1, 2)]

    if name == "I1":
        if even:
            return _product(k, e_run(1, k - 1))
        return _product(k, e_run(1, k - 2) + [GenExpr.word(k, [Ek])])
    if name == "I2":
        head = [GenExpr.word(k, [E0])]
        if even:
            return _product(k, head + e_run(2, k - 2) + [GenExpr.word(k, [Ek])])
        return _product(k, head + e_run(2, k - 1))
    if name == "Deven":
        if not even:
            raise WordError("Deven needs even k")
        i1 = standard_element("I1", k, a_sign)
        mid = _product(k, [GenExpr.word(k, [T0inv])] + e_run(2, k - 2)
                       + [GenExpr.word(k, [Tk])])
        return i1 * mid * i1
    if name == "Dodd":
        if even:
            raise WordError("Dodd needs odd k")
        i2 = standard_element("I2", k, a_sign)
        mid = _product(k, [GenExpr.word(k, [T(1, -1), T0inv, T(1, -1)])]
                       + e_run(3, k - 2) + [GenExpr.word(k, [Tk])])
        return i2 * mid * i2
    if name in ("Leven", "Meven", "Peven"):
        if not even:
            raise WordError("%s needs even k" % name)
        i1 = standard_element("I1", k, a_sign)
        mid = e_run(2, k - 2)
        if name == "Leven":
            mid = mid + [GenExpr.word(k, [Ek])]
        elif name == "Meven":
            mid = [GenExpr.word(k, [E0])] + mid
        return i1 * _product(k, mid) * i1
    if name in ("Lodd", "Modd", "Podd"):
        if even:
            raise WordError("%s needs odd k" % name)
        i2 = standard_element("I2", k, a_sign)
        if name == "Lodd":
            mid = e_run(3, k - 2) + [GenExpr.word(k, [Ek])]
        elif name == "Modd":
            mid = e_run(1, k - 2)
        else:
            mid = e_run(3, k - 2)
        return i2 * _product(k, mid) * i2
    if name == "ZI1":
        return _z_expr(k) * standard_element("I1", k, a_sign)
    if name == "ZI2":
        return _z_expr(k) * standard_element("I2", k, a_sign)
    raise WordError("unknown standard element %r" % name)


STANDARD_NAMES = ("I1", "I2", "Deven", "Dodd", "Leven", "Meven", "Peven",
                  "Lodd", "Modd", "Podd", "ZI1", "ZI2")


def _z_expr(k: int) -> GenExpr:
    total = GenExpr.zero(k)
    for j in range(1, k + 1):
        total = total + murphy_expr(k, j) + murphy_expr(k, j, inverse=True)
    return total


# ---------------------------------------------------------------------------
# the quotient-defining idempotents
# ---------------------------------------------------------------------------

def genexpr_to_json(x: GenExpr) -> dict:
    terms = [{"coeff": scalar_to_json(c),
              "word": [_letter_name(l) for l in w]}
             for w, c in sorted(x.terms.items())]
    return {"k": x.k, "terms": terms}


def genexpr_from_json(obj) -> GenExpr:
    total = GenExpr.zero(int(obj["k"]))
    for term in obj["terms"]:
        word = tuple(_letter_from_name(s) for s in term["word"])
        total = total + GenExpr.word(total.k, word, scalar_from_json(term["coeff"]))
    return total


def _letter_from_name(s: str) -> Letter:
    m = _LETTER_RE.match(s)
    if not m:
        raise WordError("bad letter name %r" % s)
    kind, idx, inv = m.groups()
    power = -1 if inv else 1
    if kind == "E":
        if inv:
            raise WordError("cap letters are not invertible: %r" % s)
        return Ek if idx == "k" else (E0 if idx == "0" else E(int(idx)))
    if idx == "k":
        return (Tk if power == 1 else Tkinv)
    if idx == "0":
        return (T0 if power == 1 else T0inv)
    return T(int(idx), power)


_LETTER_RE = re.compile(r"^(T|E)(\d+|k)(\^-1)?$")


def parse_genexpr(text: str, k: int, a_sign: int = DEFAULT_A_SIGN) -> GenExpr:
    """Parse sums of * -separated factors: generator letters (T0, T3^-1, Tk,
    E0, E2, Ek), named elements (I1, Deven, ...), and scalar atoms."""
    total = GenExpr.zero(k)
    for sign, chunk in _split_terms(text):
        term = GenExpr.one(k)
        for factor in _split_factors(chunk):
            term = term * _parse_factor(factor.strip(), k, a_sign)
        if sign < 0:
            term = -term
        total = total + term
    return total


def _split_terms(text: str):
    depth = 0
    cur = ""
    sign = 1
    prev = ""
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if (depth == 0 and ch in "+-" and cur.strip()
                and prev not in "*/^+-"):
            yield sign, cur
            sign = 1 if ch == "+" else -1
            cur = ""
        else:
            cur += ch
        if not ch.isspace():
            prev = ch
    if cur.strip():
        yield sign, cur


def _split_factors(chunk: str):
    depth = 0
    cur = ""
    for ch in chunk:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch == "*":
            if cur.strip():
                yield cur
            cur = ""
        else:
            cur += ch
    if cur.strip():
        yield cur


def _parse_factor(token: str, k: int, a_sign: int) -> GenExpr:
    m = _LETTER_RE.match(token)
    if m:
        kind, idx, inv = m.groups()
        power = -1 if inv else 1
        if kind == "T":
            if idx == "k":
                return GenExpr.word(k, [Tk if power == 1 else Tkinv])
            i = int(idx)
            if i == 0:
                return GenExpr.word(k, [T0 if power == 1 else T0inv])
            return GenExpr.word(k, [T(i, power)])
        if inv:
            raise WordError("cap generators are not invertible: %r" % token)
        if idx == "k":
            return GenExpr.word(k, [Ek])
        i = int(idx)
        return GenExpr.word(k, [E0]) if i == 0 else GenExpr.word(k, [E(i)])
    if token in STANDARD_NAMES:
        return standard_element(token, k, a_sign)
    return GenExpr.one(k).scale(parse_scalar(token))


def normalizer(which: str) -> Scalar:
    """Idempotent normalizers; the primed ones (for the eigenvalue-flipped
    boundary cases) are the inverted-parameter forms."""
    t = U * U
    t0 = U0 * U0
    tk = UK * UK
    if which == "N":
        return U.inv() * (1 + t) * (1 + t + t * t)
    if which == "N0":
        return (t0 * t).inv() * (1 + t0) * (1 + t) * (1 + t0 * t)
    if which == "Nk":
        return (tk * t).inv() * (1 + tk) * (1 + t) * (1 + tk * t)
    if which == "N0p":
        return t0 * t.inv() * (1 + t0.inv()) * (1 + t) * (1 + t0.inv() * t)
    if which == "Nkp":
        return tk * t.inv() * (1 + tk.inv()) * (1 + t) * (1 + tk.inv() * t)
    raise WordError("unknown normalizer %r" % which)


def _wall_inverse_word(k: int) -> Word:
    """W_1 * T0^-1 as a word: the T0 letter cancels."""
    return tuple([T(i, -1) for i in range(1, k)] + [Tk]
                 + [T(i) for i in range(k - 1, 0, -1)])


def e0v_numerator(k: int) -> GenExpr:
    """ak * e_0v = W_1 T0^-1 - uk as a generator expression."""
    return GenExpr.word(k, _wall_inverse_word(k)) - GenExpr.one(k).scale(UK)


def f_element(which, k: int, a_sign: int = DEFAULT_A_SIGN) -> GenExpr:
    """Quotient relators: F_i, F_0, and the wall-reflected F_0v."""
    if which == "F0":
        ae1 = ae(k, 1, a_sign)
        return ae1 * a0e0(k) * ae1 - ae1.scale(bb("t0/t"))
    if which == "Fk":
        aekm1 = ae(k, k - 1, a_sign)
        return aekm1 * akek(k) * aekm1 - aekm1.scale(bb("tk/t"))
    if which == "F0v":
        ae1 = ae(k, 1, a_sign)
        v = e0v_numerator(k)
        return ae1 * v * ae1 - ae1.scale(bb("tk/t"))
    i = int(which)
    aei = ae(k, i, a_sign)
    aei1 = ae(k, i + 1, a_sign)
    return aei * aei1 * aei - aei


def idempotent_expr(which: str, k: int, i: int = None,
                    a_sign: int = DEFAULT_A_SIGN) -> Tuple[GenExpr, Scalar]:
    """Numerator and normalizer of the quotient idempotents.

    Returns (N*p, N) so that p = (N*p)/N.  The T-letter forms are used for
    the inner and left-boundary idempotents, the wall-reflected pair is
    expressed through W_1 T0^-1.
    """
    u = U
    if which == "p_i_111":
        if i is None or not 1 <= i <= k - 2:
            raise WordError("p_i_111 needs 1 <= i <= k-2")
        cands = [
            ([T(i), T(i + 1), T(i)], ONE),
            ([T(i), T(i + 1)], -u),
            ([T(i + 1), T(i)], -u),
            ([T(i)], u * u),
            ([T(i + 1)], u * u),
            ([], -u ** 3),
        ]
        num = GenExpr.zero(k)
        for w, c in cands:
            num = num + GenExpr.word(k, w, c)
        return num, normalizer("N")
    if which in ("p0_e12", "p0_12e"):
        if k < 2:
            raise WordError("boundary idempotents need k >= 2")
        u0 = U0 if which == "p0_e12" else -U0.inv()
        cands = [
            ([T0, T(1), T0, T(1)], ONE),
            ([T(1), T0, T(1)], -u0),
            ([T0, T(1), T0], -u),
            ([T0, T(1)], u0 * u),
            ([T(1), T0], u0 * u),
            ([T(1)], -u0 * u0 * u),
            ([T0], -u0 * u * u),
            ([], u0 * u0 * u * u),
        ]
        num = GenExpr.zero(k)
        for w, c in cands:
            num = num + GenExpr.word(k, w, c)
        return num, normalizer("N0" if which == "p0_e12" else "N0p")
    if which in ("p0v_e12", "p0v_12e"):
        if k < 2:
            raise WordError("boundary idempotents need k >= 2")
        v = e0v_numerator(k)
        f0v = f_element("F0v", k, a_sign)
        if which == "p0v_e12":
            return v * f0v, normalizer("Nk")
        return v * f0v + f0v.scale(bb("tk")), normalizer("Nkp")
    raise WordError("unknown idempotent %r" % which)
