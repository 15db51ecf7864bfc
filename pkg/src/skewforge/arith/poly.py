"""Sparse multivariate polynomials over Q.

A polynomial is a dict mapping dense exponent tuples to nonzero coefficients.
Coefficients are Python ints whenever they are integral and
:class:`fractions.Fraction` otherwise, so the integer-only paths used by
the rational-function layer never touch ``Fraction`` arithmetic.

The module-level helpers prefixed with ``_`` work on raw dicts; :class:`Poly`
is the immutable public wrapper.
"""

from __future__ import annotations

import math
from fractions import Fraction
from functools import reduce
from operator import add, sub
from typing import Iterable, Mapping, Sequence

from ..errors import NotExactDivision, UnknownVariable

Exp = tuple  # dense exponent tuple


def _nc(c):
    """Demote integral Fractions to int."""
    if type(c) is Fraction and c.denominator == 1:
        return c.numerator
    return c


def _cdiv(a, b):
    if type(a) is int and type(b) is int:
        q, r = divmod(a, b)
        if not r:
            return q
        return Fraction(a, b)
    return _nc(Fraction(a) / b)


def grlex_key(e: Exp):
    return (sum(e), e)


# ---------------------------------------------------------------- raw dict ops


def _pad(terms: dict, n_old: int, n_new: int) -> dict:
    if n_old == n_new:
        return terms
    z = (0,) * (n_new - n_old)
    return {e + z: c for e, c in terms.items()}


def _add(a: dict, b: dict) -> dict:
    if len(a) < len(b):
        a, b = b, a
    r = dict(a)
    for e, c in b.items():
        v = r.get(e)
        if v is None:
            r[e] = c
        else:
            v += c
            if v:
                r[e] = v
            else:
                del r[e]
    return r


def _sub(a: dict, b: dict) -> dict:
    r = dict(a)
    for e, c in b.items():
        v = r.get(e)
        if v is None:
            r[e] = -c
        else:
            v -= c
            if v:
                r[e] = v
            else:
                del r[e]
    return r


def _neg(a: dict) -> dict:
    return {e: -c for e, c in a.items()}


def _scale(a: dict, c) -> dict:
    if not c:
        return {}
    if c == 1:
        return dict(a)
    return {e: _nc(v * c) for e, v in a.items()}


def _mul(a: dict, b: dict) -> dict:
    if not a or not b:
        return {}
    if len(a) > len(b):
        a, b = b, a
    r: dict = {}
    get = r.get
    for e1, c1 in a.items():
        for e2, c2 in b.items():
            e = tuple(map(add, e1, e2))
            v = get(e, 0) + c1 * c2
            if v:
                r[e] = v
            else:
                r.pop(e, None)
    if any(type(c) is Fraction for c in r.values()):
        r = {e: _nc(c) for e, c in r.items()}
    return r


def _pow(a: dict, k: int, n: int) -> dict:
    result = {(0,) * n: 1}
    base = a
    while k:
        if k & 1:
            result = _mul(result, base)
        k >>= 1
        if k:
            base = _mul(base, base)
    return result


def _divexact(a: dict, b: dict) -> dict:
    """Quotient ``a / b`` when the division is exact; raises otherwise."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    if len(b) == 1:
        (eb, cb), = b.items()
        q = {}
        for e, c in a.items():
            d = tuple(map(sub, e, eb))
            if min(d, default=0) < 0:
                raise NotExactDivision("monomial does not divide")
            q[d] = _cdiv(c, cb)
        return q
    q: dict = {}
    r = dict(a)
    lb = max(b)
    cb = b[lb]
    while r:
        lr = max(r)
        d = tuple(map(sub, lr, lb))
        if min(d) < 0:
            raise NotExactDivision("division is not exact")
        qc = _cdiv(r[lr], cb)
        q[d] = qc
        for e, c in b.items():
            k = tuple(map(add, e, d))
            v = r.get(k, 0) - qc * c
            if v:
                r[k] = _nc(v)
            else:
                r.pop(k, None)
    return q


def _icontent(a: dict) -> int:
    return math.gcd(*a.values()) if a else 0


def _lead(a: dict):
    return max(a, key=grlex_key)


def _vars(a: dict) -> set:
    s = set()
    for e in a:
        for i, x in enumerate(e):
            if x:
                s.add(i)
    return s


def _is_const(a: dict) -> bool:
    return len(a) == 1 and not any(next(iter(a)))


def _const(c, n: int) -> dict:
    return {(0,) * n: c} if c else {}


# ---------------------------------------------------------------- gcd over Z


def _to_uni(a: dict, v: int) -> list:
    out: dict = {}
    for e, c in a.items():
        k = e[v]
        out.setdefault(k, {})[e[:v] + (0,) + e[v + 1:]] = c
    deg = max(out)
    return [out.get(i, {}) for i in range(deg + 1)]


def _from_uni(coeffs: list, v: int) -> dict:
    r = {}
    for k, c in enumerate(coeffs):
        for e, x in c.items():
            r[e[:v] + (k,) + e[v + 1:]] = x
    return r


def _content_list(polys: Iterable[dict], n: int) -> dict:
    g: dict = {}
    for p in polys:
        if not p:
            continue
        g = _gcd(g, p) if g else _normsign(p)
        if _is_const(g) and next(iter(g.values())) == 1:
            break
    return g


def _normsign(a: dict) -> dict:
    if a and a[_lead(a)] < 0:
        return _neg(a)
    return dict(a)


def _prem(A: list, B: list) -> list:
    dB = len(B) - 1
    lcB = B[-1]
    R = list(A)
    e = len(A) - len(B) + 1
    while R and len(R) - 1 >= dB:
        lcR = R[-1]
        s = len(R) - 1 - dB
        newR = [_mul(lcB, c) for c in R]
        for i, c in enumerate(B):
            newR[i + s] = _sub(newR[i + s], _mul(lcR, c))
        while newR and not newR[-1]:
            newR.pop()
        R = newR
        e -= 1
    if e > 0 and R:
        f = lcB
        for _ in range(e - 1):
            f = _mul(f, lcB)
        R = [_mul(f, c) for c in R]
    return R


def _subresultant_gcd(A: list, B: list, n: int) -> list:
    """Primitive gcd of two primitive polynomials given as coefficient lists."""
    if len(A) < len(B):
        A, B = B, A
    one = _const(1, n)
    g = one
    h = one
    while True:
        d = len(A) - len(B)
        R = _prem(A, B)
        if not R:
            break
        if len(R) == 1:
            return [one]
        A = B
        denom = _mul(g, _pow(h, d, n)) if d else g
        B = [_divexact(c, denom) for c in R]
        g = A[-1]
        if d == 0:
            pass
        elif d == 1:
            h = g
        else:
            h = _divexact(_pow(g, d, n), _pow(h, d - 1, n))
    cont = _content_list(B, n)
    B = [_divexact(c, cont) for c in B]
    return B


def _gcd(a: dict, b: dict) -> dict:
    """gcd in Z[x_0..x_{n-1}] with positive grlex leading coefficient."""
    if not a:
        return _normsign(b)
    if not b:
        return _normsign(a)
    n = len(next(iter(a)))
    if a == b:
        return _normsign(a)
    ma = tuple(map(min, *a.keys())) if len(a) > 1 else next(iter(a))
    mb = tuple(map(min, *b.keys())) if len(b) > 1 else next(iter(b))
    if n == 1:
        ma, mb = (min(e[0] for e in a),), (min(e[0] for e in b),)
    m = tuple(map(min, ma, mb))
    if any(ma):
        a = {tuple(map(sub, e, ma)): c for e, c in a.items()}
    if any(mb):
        b = {tuple(map(sub, e, mb)): c for e, c in b.items()}
    g = _gcd_stripped(a, b, n)
    if any(m):
        g = {tuple(map(add, e, m)): c for e, c in g.items()}
    return g


def _divides(b: dict, a: dict) -> bool:
    """True when ``b`` divides ``a`` in Z[x]."""
    try:
        q = _divexact(a, b)
    except NotExactDivision:
        return False
    return all(type(c) is int for c in q.values())


def _eval_var(a: dict, v: int, x: int) -> dict:
    r: dict = {}
    for e, c in a.items():
        k = e[:v] + (0,) + e[v + 1:]
        val = r.get(k, 0) + c * x ** e[v]
        if val:
            r[k] = val
        else:
            r.pop(k, None)
    return r


def _interp(h: dict, v: int, x: int) -> dict:
    """Undo evaluation at ``x_v = x`` by symmetric x-adic expansion."""
    out: dict = {}
    half = x // 2
    i = 0
    while h:
        nxt = {}
        for e, c in h.items():
            r = c % x
            if r > half:
                r -= x
            if r:
                out[e[:v] + (i,) + e[v + 1:]] = r
            q = (c - r) // x
            if q:
                nxt[e] = q
        h = nxt
        i += 1
    return out


def _heu_gcd(a: dict, b: dict, n: int, vs: set):
    """Heuristic gcd by integer evaluation and x-adic reconstruction.

    A reconstructed candidate is accepted only after it divides both inputs,
    which with the chosen evaluation bound makes it the true gcd.  Returns
    None when six evaluation points fail.
    """
    if any(type(c) is not int for c in a.values()) or any(type(c) is not int for c in b.values()):
        return None
    ca, cb = _icontent(a), _icontent(b)
    g = math.gcd(ca, cb)
    a = {e: c // ca for e, c in a.items()}
    b = {e: c // cb for e, c in b.items()}
    v = max(vs)
    x = 2 * min(max(map(abs, a.values())), max(map(abs, b.values()))) + 29
    for _ in range(6):
        aa = _eval_var(a, v, x)
        bb = _eval_var(b, v, x)
        if aa and bb:
            h = _interp(_gcd(aa, bb), v, x)
            if h:
                h = _scale(h, Fraction(1, _icontent(h)))
                if _divides(h, a) and _divides(h, b):
                    return _normsign(_scale(h, g))
        x = x * 73794 * math.isqrt(math.isqrt(x)) // 27011
    return None


def _gcd_stripped(a: dict, b: dict, n: int) -> dict:
    if _is_const(a) or _is_const(b):
        return _const(math.gcd(_icontent(a), _icontent(b)), n)
    va, vb = _vars(a), _vars(b)
    common = va & vb
    if not common:
        return _const(math.gcd(_icontent(a), _icontent(b)), n)
    h = _heu_gcd(a, b, n, va | vb)
    if h is not None:
        return h
    only_a = va - vb
    if only_a:
        v = min(only_a)
        return _gcd(_content_list(_to_uni(a, v), n), b)
    only_b = vb - va
    if only_b:
        v = min(only_b)
        return _gcd(a, _content_list(_to_uni(b, v), n))
    # cheap exact-division probe; the common case in cancellations
    if len(a) > len(b) and _divides(b, a):
        return _normsign(b)
    if len(b) > len(a) and _divides(a, b):
        return _normsign(a)

    def deg(p, v):
        return max(e[v] for e in p)

    v = min(common, key=lambda i: (max(deg(a, i), deg(b, i)), i))
    A = _to_uni(a, v)
    B = _to_uni(b, v)
    cA = _content_list(A, n)
    cB = _content_list(B, n)
    pA = [_divexact(c, cA) for c in A]
    pB = [_divexact(c, cB) for c in B]
    h = _from_uni(_subresultant_gcd(pA, pB, n), v)
    c = _gcd(cA, cB)
    return _normsign(_mul(c, h))


# ---------------------------------------------------------------- Poly


class Poly:
    """Immutable sparse polynomial with rational coefficients.

    ``terms`` maps exponent tuples of length ``nvars`` to nonzero
    coefficients. Variable ``i`` is the ``i``-th slot of the tuple.
    """

    __slots__ = ("nvars", "terms", "_hash")

    def __init__(self, terms: Mapping | None = None, nvars: int | None = None):
        terms = dict(terms or {})
        if nvars is None:
            nvars = len(next(iter(terms))) if terms else 0
        clean = {}
        for e, c in terms.items():
            e = tuple(int(x) for x in e)
            if len(e) != nvars:
                raise ValueError(f"exponent {e} has wrong length for {nvars} variables")
            if any(x < 0 for x in e):
                raise ValueError("negative exponent")
            c = _nc(Fraction(c)) if not isinstance(c, int) else c
            if c:
                clean[e] = clean.get(e, 0) + c
        self.nvars = nvars
        self.terms = {e: c for e, c in clean.items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict, nvars: int) -> "Poly":
        p = object.__new__(cls)
        p.nvars = nvars
        p.terms = terms
        p._hash = None
        return p

    # constructors
    @classmethod
    def zero(cls, nvars: int = 0) -> "Poly":
        return cls._raw({}, nvars)

    @classmethod
    def const(cls, c, nvars: int = 0) -> "Poly":
        c = _nc(Fraction(c))
        return cls._raw(_const(c, nvars), nvars)

    @classmethod
    def var(cls, i: int, nvars: int) -> "Poly":
        if not 0 <= i < nvars:
            raise UnknownVariable(i)
        e = [0] * nvars
        e[i] = 1
        return cls._raw({tuple(e): 1}, nvars)

    @classmethod
    def monomial(cls, exponents: Mapping[int, int], coeff=1, nvars: int | None = None) -> "Poly":
        """Build ``coeff * prod x_v^k`` from a sparse ``{var: k}`` map."""
        if nvars is None:
            nvars = max(exponents, default=-1) + 1
        e = [0] * nvars
        for v, k in exponents.items():
            if k:
                e[v] = k
        return cls({tuple(e): coeff}, nvars)

    # structure
    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self) -> bool:
        return bool(self.terms)

    def is_constant(self) -> bool:
        return not self.terms or _is_const(self.terms)

    def constant_value(self):
        if not self.terms:
            return 0
        if not self.is_constant():
            raise ValueError("not a constant polynomial")
        return next(iter(self.terms.values()))

    def variables(self) -> set:
        return _vars(self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def degree(self, v: int) -> int:
        return max((e[v] for e in self.terms), default=-1) if v < self.nvars else (0 if self.terms else -1)

    def leading_term(self):
        e = _lead(self.terms)
        return e, self.terms[e]

    def sorted_terms(self):
        """Terms in descending graded-lex order."""
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    def is_integral(self) -> bool:
        return all(type(c) is int for c in self.terms.values())

    def monomials(self):
        """Sparse ``{var: exp}`` view of each monomial, in grlex order."""
        return [{i: x for i, x in enumerate(e) if x} for e, _ in self.sorted_terms()]

    def with_nvars(self, n: int) -> "Poly":
        if n == self.nvars:
            return self
        if n < self.nvars:
            if any(any(e[n:]) for e in self.terms):
                raise UnknownVariable(f"polynomial uses variables beyond {n}")
            return Poly._raw({e[:n]: c for e, c in self.terms.items()}, n)
        return Poly._raw(_pad(self.terms, self.nvars, n), n)

    def _align(self, other: "Poly"):
        if self.nvars == other.nvars:
            return self.terms, other.terms, self.nvars
        n = max(self.nvars, other.nvars)
        return _pad(self.terms, self.nvars, n), _pad(other.terms, other.nvars, n), n

    def _coerce(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction)):
            return Poly.const(other, self.nvars)
        return NotImplemented

    # arithmetic
    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, n = self._align(other)
        return Poly._raw(_add(a, b), n)

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b, n = self._align(other)
        return Poly._raw(_sub(a, b), n)

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        return Poly._raw(_neg(self.terms), self.nvars)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return Poly._raw(_scale(self.terms, _nc(Fraction(other))), self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b, n = self._align(other)
        return Poly._raw(_mul(a, b), n)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if not isinstance(k, int) or k < 0:
            raise ValueError("exponent must be a nonnegative integer")
        return Poly._raw(_pow(self.terms, k, self.nvars), self.nvars)

    def exact_div(self, other: "Poly") -> "Poly":
        a, b, n = self._align(other)
        return Poly._raw(_divexact(a, b), n)

    def content(self) -> Fraction:
        """Rational content: gcd of numerators over lcm of denominators, sign of the grlex leading term."""
        if not self.terms:
            return Fraction(0)
        nums = [Fraction(c).numerator for c in self.terms.values()]
        dens = [Fraction(c).denominator for c in self.terms.values()]
        c = Fraction(math.gcd(*nums), math.lcm(*dens))
        return c if self.leading_term()[1] > 0 else -c

    def primitive(self) -> "Poly":
        if not self.terms:
            return self
        return self * (1 / self.content())

    def clear_denominators(self) -> tuple["Poly", int]:
        """Return ``(m * self, m)`` with ``m`` the lcm of coefficient denominators."""
        m = math.lcm(*(Fraction(c).denominator for c in self.terms.values())) if self.terms else 1
        if m == 1:
            return self, 1
        return self * m, m

    # comparison
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other, self.nvars)
        if not isinstance(other, Poly):
            return NotImplemented
        a, b, _ = self._align(other)
        return a == b

    def __hash__(self):
        if self._hash is None:
            items = []
            for e, c in self.terms.items():
                k = len(e)
                while k and not e[k - 1]:
                    k -= 1
                items.append((e[:k], c))
            self._hash = hash(frozenset(items))
        return self._hash

    # evaluation and substitution
    def evaluate(self, point: Sequence | Mapping):
        """Exact value at ``point`` (sequence indexed by variable id, or mapping)."""
        if isinstance(point, Mapping):
            getv = point.__getitem__
        else:
            getv = point.__getitem__
        if not self.terms:
            return 0
        # bring the point to a common denominator so the sum runs over ints
        vals: dict = {}
        den = 1
        for e in self.terms:
            for i, k in enumerate(e):
                if k and i not in vals:
                    try:
                        x = Fraction(getv(i))
                    except (KeyError, IndexError):
                        raise UnknownVariable(f"no value for variable {i}") from None
                    vals[i] = x
                    den = den * x.denominator // math.gcd(den, x.denominator)
        nums = {i: x.numerator * (den // x.denominator) for i, x in vals.items()}
        cden = 1
        for c in self.terms.values():
            if type(c) is Fraction:
                cden = cden * c.denominator // math.gcd(cden, c.denominator)
        top = max(sum(e) for e in self.terms)
        dpow = [1]
        for _ in range(top):
            dpow.append(dpow[-1] * den)
        cache: dict = {}
        total = 0
        for e, c in self.terms.items():
            t = c * cden if cden != 1 else c
            if cden != 1:
                t = int(t)
            deg = 0
            for i, k in enumerate(e):
                if k:
                    deg += k
                    key = (i, k)
                    p = cache.get(key)
                    if p is None:
                        p = nums[i] ** k
                        cache[key] = p
                    t *= p
            total += t * dpow[top - deg]
        return _nc(Fraction(total, dpow[top] * cden))

    def substitute_affine(self, perm: Sequence[int], scale: Sequence, shift: Sequence) -> "Poly":
        """Substitute ``x_v -> scale[v] * x_{perm[v]} + shift[v]``."""
        return Poly._raw(_subst_affine(self.terms, self.nvars, perm, scale, shift), self.nvars)

    def __repr__(self):
        from .serialize import poly_to_text

        return f"Poly({poly_to_text(self)!r})"


def _subst_affine(terms: dict, n: int, perm, scale, shift) -> dict:
    if not terms:
        return {}
    if len(perm) < n:
        raise UnknownVariable(f"automorphism acts on {len(perm)} variables, polynomial has {n}")
    if len(perm) > n:
        m = len(perm)
        terms = _pad(terms, n, m)
        n = m
    ident_perm = all(p == i for i, p in enumerate(perm))
    unit_scale = all(s == 1 for s in scale)
    # monomial part: x_v -> scale[v] x_{perm[v]}
    if ident_perm and unit_scale:
        r = terms
    else:
        r = {}
        for e, c in terms.items():
            ne = [0] * n
            for v, k in enumerate(e):
                if k:
                    ne[perm[v]] = k
                    if scale[v] != 1:
                        c = c * scale[v] ** k
            r[tuple(ne)] = _nc(c) if type(c) is Fraction else c
    # translation part, expressed on the target variables
    shifts = {}
    for v in range(n):
        if shift[v]:
            shifts[perm[v]] = _nc(Fraction(shift[v]) / scale[v])
    for w, b in shifts.items():
        r = _translate(r, w, b)
    return dict(r)


def _translate(terms: dict, w: int, b) -> dict:
    """Substitute ``x_w -> x_w + b``."""
    out: dict = {}
    for e, c in terms.items():
        k = e[w]
        if not k:
            v = out.get(e, 0) + c
            if v:
                out[e] = v
            else:
                out.pop(e, None)
            continue
        for j in range(k + 1):
            coef = c * math.comb(k, j) * (b ** (k - j))
            if not coef:
                continue
            ne = e[:w] + (j,) + e[w + 1:]
            v = out.get(ne, 0) + coef
            if v:
                out[ne] = v
            else:
                out.pop(ne, None)
    if any(type(c) is Fraction for c in out.values()):
        out = {e: _nc(c) for e, c in out.items() if c}
    return out


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic-free gcd over Q: the primitive integer gcd with positive grlex leading coefficient."""
    f, g = f.primitive(), g.primitive()
    a, b, n = f._align(g)
    if not a and not b:
        return Poly.zero(n)
    return Poly._raw(_gcd(a, b), n)


def lcm_of(values: Iterable[int]) -> int:
    return reduce(math.lcm, values, 1)
