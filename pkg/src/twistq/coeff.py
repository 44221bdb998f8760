"""Exact arithmetic in quotients of the Laurent polynomial ring Z_n[T, T^-1].

A coefficient ring is determined by a modulus n >= 0 (n = 0 means the
integers) and a polynomial h(T) with invertible leading and constant
coefficients mod n.  Invertibility of the constant coefficient makes T a
unit in Z_n[T]/(h), so the quotient already contains T^-1 and no separate
localization is needed.

Elements are represented as tuples of d = deg(h) canonical residues
(c_0, ..., c_{d-1}) encoding c_0 + c_1*T + ... + c_{d-1}*T^{d-1}.  The
defining polynomial is normalized to be monic (scaling h by a unit does
not change the ideal), which makes reduction a plain division step.
"""

import math
import re

__all__ = [
    "RingError",
    "AlexanderRing",
    "GroupRingElem",
    "parse_ring",
    "parse_poly",
    "render_poly",
]


class RingError(ValueError):
    pass


def _inverse_mod(a, n):
    """Inverse of a modulo n; for n = 0 only +-1 are units."""
    if n == 0:
        if a in (1, -1):
            return a
        raise RingError("%d is not a unit in Z" % a)
    a %= n
    if math.gcd(a, n) != 1:
        raise RingError("%d is not a unit mod %d" % (a, n))
    return pow(a, -1, n)


def _red(c, n):
    return c % n if n else c


class AlexanderRing:
    """The ring Z_n[T, T^-1] / (h(T)) with exact element arithmetic."""

    def __init__(self, modulus, h_coeffs):
        if modulus < 0:
            raise RingError("modulus must be >= 0")
        coeffs = [_red(int(c), modulus) for c in h_coeffs]
        while coeffs and coeffs[-1] == 0:
            coeffs.pop()
        if len(coeffs) < 2:
            raise RingError("defining polynomial must have degree >= 1")
        lead_inv = _inverse_mod(coeffs[-1], modulus)  # also checks unit
        _inverse_mod(coeffs[0], modulus)  # constant must be a unit too
        self.modulus = modulus
        # store the monic normalization, ascending powers, length d + 1
        self.h = tuple(_red(c * lead_inv, modulus) for c in coeffs)
        self.degree = len(self.h) - 1
        # T^-1 = -c_0^{-1} * (c_1 + c_2 T + ... + T^{d-1}) for monic h
        c0_inv = _inverse_mod(self.h[0], modulus)
        self._t_inv = self.reduce(
            [_red(-c0_inv * c, modulus) for c in self.h[1:]])

    # -- element plumbing ------------------------------------------------

    def reduce(self, coeffs):
        """Canonical representative of a polynomial given by any coeff list."""
        n, d = self.modulus, self.degree
        cs = [int(c) for c in coeffs]
        for i in range(len(cs) - 1, d - 1, -1):
            q = cs[i]
            if q:
                for j in range(d + 1):
                    cs[i - d + j] -= q * self.h[j]
        cs = cs[:d] + [0] * (d - len(cs))
        return tuple(_red(c, n) for c in cs)

    def zero(self):
        return (0,) * self.degree

    def one(self):
        return self.from_int(1)

    def from_int(self, k):
        return self.reduce([k])

    def is_zero(self, a):
        return all(c == 0 for c in a)

    def add(self, a, b):
        return tuple(_red(x + y, self.modulus)
                     for x, y in zip(a, b, strict=True))

    def neg(self, a):
        return tuple(_red(-x, self.modulus) for x in a)

    def sub(self, a, b):
        return tuple(_red(x - y, self.modulus)
                     for x, y in zip(a, b, strict=True))

    def scalar_mul(self, k, a):
        return tuple(_red(k * x, self.modulus) for x in a)

    def mul(self, a, b):
        prod = [0] * (2 * self.degree - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        return self.reduce(prod)

    def t_act(self, a):
        """Multiply by T."""
        return self.reduce((0,) + tuple(a))

    def t_pow(self, a, k):
        """Multiply by T^k, k any integer."""
        k = int(k)
        step = self.t_act if k >= 0 else (lambda x: self.mul(self._t_inv, x))
        for _ in range(abs(k)):
            a = step(a)
        return a

    def quandle_op(self, a, b):
        """a * b = T a + (1 - T) b, the Alexander quandle operation."""
        return self.add(self.t_act(self.sub(a, b)), b)

    def companion_matrix(self):
        """Integer matrix of multiplication by T on coefficient columns."""
        d, n = self.degree, self.modulus
        mat = [[0] * d for _ in range(d)]
        for j in range(d - 1):
            mat[j + 1][j] = 1
        for i in range(d):
            mat[i][d - 1] = _red(-self.h[i], n)
        return mat

    # -- enumeration -----------------------------------------------------

    def size(self):
        return self.modulus ** self.degree if self.modulus else None

    def elements(self):
        """All elements in lexicographic coefficient order (finite rings)."""
        if self.modulus == 0:
            raise RingError("cannot enumerate an infinite ring")
        out = [()]
        for _ in range(self.degree):
            out = [e + (c,) for e in out for c in range(self.modulus)]
        # lexicographic on tuples: vary the last coordinate fastest would
        # break tuple ordering, so rebuild sorted
        return sorted(out)

    # -- text ------------------------------------------------------------

    def descriptor(self):
        return "Z%d[T]/(%s)" % (self.modulus, render_poly(self.h))

    def render_elem(self, a):
        return render_poly(a)

    def parse_elem(self, text):
        return self.reduce(parse_poly(text))

    def __eq__(self, other):
        return (isinstance(other, AlexanderRing)
                and self.modulus == other.modulus and self.h == other.h)

    def __hash__(self):
        return hash((self.modulus, self.h))

    def __repr__(self):
        return "AlexanderRing(%r)" % self.descriptor()


# -- polynomial text -----------------------------------------------------

_TERM_RE = re.compile(
    r"([+-]?)\s*(?:(\d+)\s*\*?\s*)?(?:T(?:\^(-?\d+))?)?", re.IGNORECASE)


def parse_poly(text):
    """Parse '2T^2 - T + 1' into an ascending coefficient list."""
    s = text.strip()
    if not s:
        raise RingError("empty polynomial")
    coeffs = {}
    pos = 0
    while pos < len(s):
        m = _TERM_RE.match(s, pos)
        if not m or m.end() == pos:
            raise RingError("cannot parse polynomial %r near %r" % (text, s[pos:]))
        sign, num, exp = m.groups()
        frag = s[pos:m.end()]
        if not num and "t" not in frag.lower():
            raise RingError("cannot parse polynomial %r near %r" % (text, s[pos:]))
        c = int(num) if num else 1
        if sign == "-":
            c = -c
        if "t" in frag.lower():
            e = int(exp) if exp is not None else 1
        else:
            e = 0
        if e < 0:
            raise RingError("negative powers of T not allowed in polynomial text")
        coeffs[e] = coeffs.get(e, 0) + c
        pos = m.end()
        while pos < len(s) and s[pos].isspace():
            pos += 1
    deg = max(coeffs)
    return [coeffs.get(i, 0) for i in range(deg + 1)]


def render_poly(coeffs):
    """Render an ascending coefficient sequence as 'c_d T^d + ... + c_0'."""
    parts = []
    for e in range(len(coeffs) - 1, -1, -1):
        c = coeffs[e]
        if c == 0:
            continue
        if e == 0:
            body = str(abs(c))
        else:
            mono = "T" if e == 1 else "T^%d" % e
            body = mono if abs(c) == 1 else "%d%s" % (abs(c), mono)
        if not parts:
            parts.append(("-" if c < 0 else "") + body)
        else:
            parts.append(("- " if c < 0 else "+ ") + body)
    return " ".join(parts) if parts else "0"


_RING_RE = re.compile(
    r"^\s*Z\s*(\d*)\s*\[\s*T\s*\]\s*/\s*\(\s*(.+?)\s*\)\s*$", re.IGNORECASE)


def parse_ring(text):
    """Parse a ring descriptor such as 'Z3[T]/(T+1)' or 'Z[T]/(T^2-1)'."""
    m = _RING_RE.match(text)
    if not m:
        raise RingError("cannot parse ring descriptor %r" % text)
    n = int(m.group(1)) if m.group(1) else 0
    return AlexanderRing(n, parse_poly(m.group(2)))


# -- group ring of the additive group of A --------------------------------

_LETTERS = "stuvwxyz"


class GroupRingElem:
    """Element of Z[A] for the additive group A of a coefficient ring.

    Keys are ring elements (coefficient tuples), values are integer
    multiplicities.  Written multiplicatively: the basis vector T^i of A
    is rendered as the i-th letter of s, t, u, ..., with additive A-values
    becoming exponents.
    """

    def __init__(self, ring, terms=None):
        self.ring = ring
        self.terms = {}
        if terms:
            for key, mult in dict(terms).items():
                self.add_term(key, mult)

    def add_term(self, key, mult):
        key = tuple(key)
        if len(key) != self.ring.degree:
            raise RingError("group ring key has wrong length")
        m = self.terms.get(key, 0) + mult
        if m:
            self.terms[key] = m
        else:
            self.terms.pop(key, None)

    def __add__(self, other):
        out = GroupRingElem(self.ring, self.terms)
        for key, mult in other.terms.items():
            out.add_term(key, mult)
        return out

    def scale(self, k):
        return GroupRingElem(
            self.ring, {key: k * m for key, m in self.terms.items()})

    def t_act(self):
        """Apply the T-action of A to every group element key."""
        out = GroupRingElem(self.ring)
        for key, mult in self.terms.items():
            out.add_term(self.ring.t_act(key), mult)
        return out

    def total(self):
        """Sum of multiplicities (image under A -> 0)."""
        return sum(self.terms.values())

    def is_integer(self):
        """True when the element is an integer multiple of the identity."""
        return all(self.ring.is_zero(k) for k in self.terms)

    # rendering ----------------------------------------------------------

    @staticmethod
    def _word(key):
        if len(key) > len(_LETTERS):
            raise RingError("no letters left to render rank-%d keys" % len(key))
        nonzero = [(i, e) for i, e in enumerate(key) if e != 0]
        if not nonzero:
            return "1"
        exps = {e for _, e in nonzero}
        if len(nonzero) > 1 and len(exps) == 1 and nonzero[0][1] != 1:
            word = "".join(_LETTERS[i] for i, _ in nonzero)
            return "(%s)^%d" % (word, nonzero[0][1])
        parts = []
        for i, e in nonzero:
            parts.append(_LETTERS[i] if e == 1 else "%s^%d" % (_LETTERS[i], e))
        return "".join(parts)

    @staticmethod
    def _term_order(key):
        return (sum(1 for e in key if e < 0), key)

    def render(self):
        if not self.terms:
            return "0"
        chunks = []
        for key in sorted(self.terms, key=self._term_order):
            mult = self.terms[key]
            word = self._word(key)
            if word == "1":
                body = str(abs(mult))
            elif abs(mult) == 1:
                body = word
            else:
                body = "%d%s" % (abs(mult), word)
            if not chunks:
                chunks.append(("-" if mult < 0 else "") + body)
            else:
                chunks.append(("- " if mult < 0 else "+ ") + body)
        return " ".join(chunks)

    def canonical_under_T(self, max_orbit=4096):
        """Representative of the T-orbit with lexicographically least text."""
        best, cur = self, self
        best_text = best.render()
        for _ in range(max_orbit):
            cur = cur.t_act()
            if cur == self:
                return best
            text = cur.render()
            if text < best_text:
                best, best_text = cur, text
        raise RingError("T-orbit did not close after %d steps" % max_orbit)

    def __eq__(self, other):
        return (isinstance(other, GroupRingElem)
                and self.ring == other.ring and self.terms == other.terms)

    def __repr__(self):
        return "GroupRingElem(%r)" % self.render()
