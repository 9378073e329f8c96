"""Exact arithmetic over multivariate Laurent polynomials and their fraction field.

Coefficients are arbitrary-precision rationals (``fractions.Fraction``); no
floating point is used anywhere.  A polynomial is a sparse map from integer
exponent vectors to nonzero coefficients.  Rational functions are stored
lazily normalized: equality is decided by cross-multiplication, so
correctness never depends on multivariate gcd.  A content-and-monomial
reduction pass keeps sizes bounded.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping, Sequence


class RingError(Exception):
    """Base class for exact-arithmetic errors."""


class DivisionByZero(RingError):
    pass


class ZeroPolynomial(RingError):
    pass


class PoleAtInfinity(RingError):
    def __init__(self, order: int):
        super().__init__(f"pole of order {order} at infinity")
        self.order = order


class ParseError(RingError):
    def __init__(self, message: str, position: int):
        super().__init__(f"{message} (at position {position})")
        self.position = position


# Variable classes are metadata only; they never change arithmetic.
VAR_CLASSES = ("equivariant", "symplectic-weight", "kahler", "loop", "spectral")


@dataclass(frozen=True)
class VarTable:
    """Ordered variable context shared by all values of one computation."""

    names: tuple[str, ...]
    classes: tuple[str, ...] = field(default=())

    def __post_init__(self):
        if len(set(self.names)) != len(self.names):
            raise ValueError("variable names must be unique")
        if self.classes and len(self.classes) != len(self.names):
            raise ValueError("one class per variable")
        for c in self.classes:
            if c not in VAR_CLASSES:
                raise ValueError(f"unknown variable class {c!r}")

    def index(self, name: str) -> int:
        return self.names.index(name)

    @property
    def nvars(self) -> int:
        return len(self.names)

    def zero_exp(self) -> tuple[int, ...]:
        return (0,) * len(self.names)


def _grlex_key(exp: tuple[int, ...]) -> tuple:
    return (sum(exp), exp)


class LaurentPoly:
    """Sparse Laurent polynomial: map exponent vector -> nonzero Fraction."""

    __slots__ = ("table", "terms")

    def __init__(self, table: VarTable, terms: Mapping[tuple[int, ...], Fraction] | None = None):
        self.table = table
        self.terms: dict[tuple[int, ...], Fraction] = {}
        if terms:
            for e, c in terms.items():
                if c:
                    self.terms[tuple(e)] = Fraction(c)

    # -- constructors -------------------------------------------------

    @classmethod
    def zero(cls, table: VarTable) -> "LaurentPoly":
        return cls(table)

    @classmethod
    def const(cls, table: VarTable, c) -> "LaurentPoly":
        c = Fraction(c)
        if not c:
            return cls(table)
        return cls(table, {table.zero_exp(): c})

    @classmethod
    def var(cls, table: VarTable, name: str, power: int = 1) -> "LaurentPoly":
        e = [0] * table.nvars
        e[table.index(name)] = power
        return cls(table, {tuple(e): Fraction(1)})

    @classmethod
    def monomial(cls, table: VarTable, exp: Sequence[int], coeff=1) -> "LaurentPoly":
        return cls(table, {tuple(exp): Fraction(coeff)})

    @classmethod
    def linear_form(cls, table: VarTable, char: Sequence[int]) -> "LaurentPoly":
        """Additive realization of an integer character: sum c_i * var_i."""
        terms = {}
        for i, c in enumerate(char):
            if c:
                e = [0] * table.nvars
                e[i] = 1
                terms[tuple(e)] = Fraction(c)
        return cls(table, terms)

    # -- basic structure ----------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_const(self) -> bool:
        return not self.terms or (len(self.terms) == 1 and self.table.zero_exp() in self.terms)

    def const_value(self) -> Fraction:
        if self.is_zero():
            return Fraction(0)
        if not self.is_const():
            raise RingError("not a constant")
        return self.terms[self.table.zero_exp()]

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.table.names == other.table.names
            and self.terms == other.terms
        )

    def __hash__(self):
        return hash((self.table.names, frozenset(self.terms.items())))

    def _check(self, other: "LaurentPoly"):
        if self.table.names != other.table.names:
            raise RingError("mixed variable tables")

    # -- arithmetic ----------------------------------------------------

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            s = out.get(e, Fraction(0)) + c
            if s:
                out[e] = s
            else:
                out.pop(e, None)
        r = LaurentPoly(self.table)
        r.terms = out
        return r

    def __neg__(self) -> "LaurentPoly":
        r = LaurentPoly(self.table)
        r.terms = {e: -c for e, c in self.terms.items()}
        return r

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        return self + (-other)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: dict[tuple[int, ...], Fraction] = {}
        if len(self.terms) > len(other.terms):
            a, b = other, self
        else:
            a, b = self, other
        for e1, c1 in a.terms.items():
            for e2, c2 in b.terms.items():
                e = tuple(x + y for x, y in zip(e1, e2))
                s = out.get(e, Fraction(0)) + c1 * c2
                if s:
                    out[e] = s
                else:
                    del out[e]
        r = LaurentPoly(self.table)
        r.terms = out
        return r

    def scale(self, c) -> "LaurentPoly":
        c = Fraction(c)
        r = LaurentPoly(self.table)
        if c:
            r.terms = {e: c * v for e, v in self.terms.items()}
        return r

    def shift(self, exp: Sequence[int]) -> "LaurentPoly":
        """Multiply by the monomial with the given exponent vector."""
        exp = tuple(exp)
        r = LaurentPoly(self.table)
        r.terms = {tuple(x + y for x, y in zip(e, exp)): c for e, c in self.terms.items()}
        return r

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            raise RingError("negative power of a polynomial; use RationalFunction")
        result = LaurentPoly.const(self.table, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    # -- leading data and exact division --------------------------------

    def leading(self) -> tuple[tuple[int, ...], Fraction]:
        if not self.terms:
            raise ZeroPolynomial("zero polynomial has no leading term")
        e = max(self.terms, key=_grlex_key)
        return e, self.terms[e]

    def exact_div(self, other: "LaurentPoly") -> "LaurentPoly | None":
        """Exact quotient self/other, or None if other does not divide self."""
        self._check(other)
        if other.is_zero():
            raise DivisionByZero("division by the zero polynomial")
        if self.is_zero():
            return LaurentPoly(self.table)
        if other.is_monomial():
            (e0, c0), = other.terms.items()
            r = LaurentPoly(self.table)
            r.terms = {
                tuple(x - y for x, y in zip(e, e0)): c / c0 for e, c in self.terms.items()
            }
            return r
        # necessary condition: per-variable degree spans must majorize
        for i in range(self.table.nvars):
            dmax = max(e[i] for e in self.terms) - max(e[i] for e in other.terms)
            dmin = min(e[i] for e in self.terms) - min(e[i] for e in other.terms)
            if dmax < dmin:
                return None
        # Single-divisor division loop; an exact quotient has its leading and
        # trailing grlex terms pinned by those of self and other, which bounds
        # the walk and detects failure early.
        le, lc = other.leading()
        te = min(other.terms, key=_grlex_key)
        tf = min(self.terms, key=_grlex_key)
        floor_key = _grlex_key(tuple(x - y for x, y in zip(tf, te)))
        rem = self
        q = LaurentPoly(self.table)
        guard = 4 * (len(self) + 1) * (len(other) + 1) + 16
        while not rem.is_zero():
            re, rc = rem.leading()
            qe = tuple(x - y for x, y in zip(re, le))
            if _grlex_key(qe) < floor_key:
                return None
            qc = rc / lc
            qt = LaurentPoly.monomial(self.table, qe, qc)
            q = q + qt
            rem = rem - qt * other
            guard -= 1
            if guard <= 0:
                return None
            if not rem.is_zero() and _grlex_key(rem.leading()[0]) >= _grlex_key(re):
                return None
        return q

    # -- degrees and supports -------------------------------------------

    def total_degree(self, subset: Iterable[str] | None = None) -> int:
        """Max total degree over the chosen variables (all by default)."""
        if self.is_zero():
            raise ZeroPolynomial("degree of zero polynomial")
        if subset is None:
            idx = range(self.table.nvars)
        else:
            idx = [self.table.index(n) for n in subset]
        return max(sum(e[i] for i in idx) for e in self.terms)

    def var_degree(self, name: str) -> int:
        if self.is_zero():
            raise ZeroPolynomial("degree of zero polynomial")
        i = self.table.index(name)
        return max(e[i] for e in self.terms)

    def var_valuation(self, name: str) -> int:
        if self.is_zero():
            raise ZeroPolynomial("valuation of zero polynomial")
        i = self.table.index(name)
        return min(e[i] for e in self.terms)

    def support(self, subset: Iterable[str] | None = None) -> set[tuple[int, ...]]:
        """Exponent vectors projected to the chosen variables."""
        if subset is None:
            idx = list(range(self.table.nvars))
        else:
            idx = [self.table.index(n) for n in subset]
        return {tuple(e[i] for i in idx) for e in self.terms}

    def coeffs_in_var(self, name: str) -> dict[int, "LaurentPoly"]:
        """Split into coefficients of powers of one variable."""
        i = self.table.index(name)
        out: dict[int, LaurentPoly] = {}
        for e, c in self.terms.items():
            k = e[i]
            e0 = list(e)
            e0[i] = 0
            p = out.setdefault(k, LaurentPoly(self.table))
            p.terms[tuple(e0)] = p.terms.get(tuple(e0), Fraction(0)) + c
        for k in list(out):
            out[k].terms = {e: c for e, c in out[k].terms.items() if c}
            if not out[k].terms:
                del out[k]
        return out

    # -- substitution and table maps --------------------------------------

    def substitute(self, assignment: Mapping[str, "LaurentPoly"]) -> "LaurentPoly":
        """Substitute variables by polynomials (images of negatively-powered
        variables must be invertible monomials)."""
        if not assignment:
            return self
        target = next(iter(assignment.values())).table
        idx = {self.table.index(n): p for n, p in assignment.items()}
        same_table = target.names == self.table.names
        out = LaurentPoly(target)
        for e, c in self.terms.items():
            term = LaurentPoly.const(target, c)
            rest_exp = [0] * target.nvars
            for i, k in enumerate(e):
                if not k:
                    continue
                if i in idx:
                    img = idx[i]
                    if k < 0:
                        if not img.is_monomial():
                            raise RingError("negative power needs a monomial image")
                        (me, mc), = img.terms.items()
                        inv = LaurentPoly.monomial(target, tuple(-x for x in me), 1 / mc)
                        term = term * inv ** (-k)
                    else:
                        term = term * img**k
                elif same_table:
                    rest_exp[i] += k
                else:
                    j = target.index(self.table.names[i])
                    rest_exp[j] += k
            out = out + term.shift(rest_exp)
        return out

    def map_table(self, target: VarTable) -> "LaurentPoly":
        """Re-express on another table; variables are matched by name and
        dropped variables must be absent."""
        pos = []
        for i, n in enumerate(self.table.names):
            pos.append(target.names.index(n) if n in target.names else None)
        out = LaurentPoly(target)
        for e, c in self.terms.items():
            ne = [0] * target.nvars
            for i, k in enumerate(e):
                if not k:
                    continue
                if pos[i] is None:
                    raise RingError(f"variable {self.table.names[i]} does not map")
                ne[pos[i]] = k
            out.terms[tuple(ne)] = out.terms.get(tuple(ne), Fraction(0)) + c
        out.terms = {e: c for e, c in out.terms.items() if c}
        return out

    # -- serialization ----------------------------------------------------

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=_grlex_key, reverse=True):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.table.names, e):
                if k == 0:
                    continue
                factors.append(name if k == 1 else f"{name}^{k}")
            mono = "*".join(factors)
            ac = abs(c)
            if not mono:
                body = str(ac)
            elif ac == 1:
                body = mono
            else:
                body = f"{ac}*{mono}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"LaurentPoly({self})"

    @classmethod
    def parse(cls, table: VarTable, text: str) -> "LaurentPoly":
        return _parse_poly(table, text)


def _parse_poly(table: VarTable, text: str) -> LaurentPoly:
    """Parse the canonical text form (sums of rational-coefficient monomials)."""
    s = text.strip()
    if not s:
        raise ParseError("empty polynomial", 0)
    pos = 0
    n = len(s)

    def skip_ws():
        nonlocal pos
        while pos < n and s[pos].isspace():
            pos += 1

    def read_int() -> int:
        nonlocal pos
        start = pos
        if pos < n and s[pos] in "+-":
            pos += 1
        if pos >= n or not s[pos].isdigit():
            raise ParseError("expected integer", start)
        while pos < n and s[pos].isdigit():
            pos += 1
        return int(s[start:pos])

    def read_name() -> str:
        nonlocal pos
        start = pos
        if pos >= n or not (s[pos].isalpha() or s[pos] == "_"):
            raise ParseError("expected variable name", start)
        while pos < n and (s[pos].isalnum() or s[pos] == "_"):
            pos += 1
        return s[start:pos]

    result = LaurentPoly.zero(table)
    sign = 1
    first = True
    while True:
        skip_ws()
        if pos >= n:
            if first:
                raise ParseError("empty polynomial", pos)
            break
        if not first or s[pos] in "+-":
            if pos >= n or s[pos] not in "+-":
                raise ParseError("expected '+' or '-'", pos)
            sign = 1 if s[pos] == "+" else -1
            pos += 1
            skip_ws()
        first = False
        # term: optional coefficient then *-separated variable powers
        coeff = Fraction(sign)
        exp = [0] * table.nvars
        saw_factor = False
        if pos < n and s[pos].isdigit():
            num = read_int()
            den = 1
            if pos < n and s[pos] == "/":
                pos += 1
                den = read_int()
                if den == 0:
                    raise ParseError("zero denominator", pos)
            coeff *= Fraction(num, den)
            saw_factor = True
        while True:
            skip_ws()
            if saw_factor:
                if pos < n and s[pos] == "*":
                    pos += 1
                    skip_ws()
                elif pos < n and (s[pos].isalpha() or s[pos] == "_"):
                    raise ParseError("expected '*' between factors", pos)
                else:
                    break
            if pos >= n or not (s[pos].isalpha() or s[pos] == "_"):
                if saw_factor:
                    raise ParseError("expected variable after '*'", pos)
                break
            name_start = pos
            name = read_name()
            if name not in table.names:
                raise ParseError(f"unknown variable {name!r}", name_start)
            k = 1
            if pos < n and s[pos] == "^":
                pos += 1
                k = read_int()
            exp[table.index(name)] += k
            saw_factor = True
        if not saw_factor:
            raise ParseError("expected term", pos)
        result = result + LaurentPoly.monomial(table, exp, coeff)
        sign = 1
    return result


def _content_wrt(p: LaurentPoly, var_index: int) -> LaurentPoly:
    """Gcd of the coefficient polynomials of powers of one variable."""
    coeffs: dict[int, LaurentPoly] = {}
    for e, c in p.terms.items():
        k = e[var_index]
        e0 = list(e)
        e0[var_index] = 0
        q = coeffs.setdefault(k, LaurentPoly(p.table))
        q.terms[tuple(e0)] = q.terms.get(tuple(e0), Fraction(0)) + c
    acc = None
    for q in coeffs.values():
        q.terms = {e: c for e, c in q.terms.items() if c}
        acc = q if acc is None else poly_gcd(acc, q)
        if acc.is_const():
            break
    return acc if acc is not None else LaurentPoly.const(p.table, 1)


def _pseudo_rem(f: LaurentPoly, g: LaurentPoly, var_index: int) -> LaurentPoly:
    """Pseudo-remainder of f by g with respect to one variable."""
    table = f.table
    name = table.names[var_index]
    fc = f.coeffs_in_var(name)
    gc = g.coeffs_in_var(name)
    dg = max(gc)
    lead_g = gc[dg]
    r = dict(fc)
    guard = 2 * (max(r) - dg) + 4
    while r and max(r) >= dg:
        dr = max(r)
        lead_r = r[dr]
        # r <- lc(g) * r - lc(r) * x^(dr-dg) * g
        new: dict[int, LaurentPoly] = {}
        for k, c in r.items():
            new[k] = lead_g * c
        for k, c in gc.items():
            kk = k + dr - dg
            term = lead_r * c
            new[kk] = new[kk] - term if kk in new else -term
        r = {k: v for k, v in new.items() if not v.is_zero()}
        if dr == (max(r) if r else -1):
            break  # no progress; bail out defensively
        guard -= 1
        if guard <= 0:
            break
    out = LaurentPoly(table)
    for k, c in r.items():
        for e, v in c.terms.items():
            ee = list(e)
            ee[var_index] += k
            out.terms[tuple(ee)] = out.terms.get(tuple(ee), Fraction(0)) + v
    out.terms = {e: c for e, c in out.terms.items() if c}
    return out


def _int_primitive(p: LaurentPoly) -> LaurentPoly:
    """Scale so coefficients are coprime integers with positive leading one;
    essential to stop coefficient explosion along remainder sequences."""
    if p.is_zero():
        return p
    from math import gcd as igcd

    g = 0
    l = 1
    for c in p.terms.values():
        g = igcd(g, c.numerator)
        l = l * c.denominator // igcd(l, c.denominator)
    scale = Fraction(l, g)
    if p.leading()[1] < 0:
        scale = -scale
    return p.scale(scale)


def _primitive(p: LaurentPoly, var_index: int) -> LaurentPoly:
    cont = _content_wrt(p, var_index)
    if not cont.is_const():
        q = p.exact_div(cont)
        if q is not None:
            p = q
    return _int_primitive(p)


_GCD_SIZE_CAP = 5000


def poly_gcd(f: LaurentPoly, g: LaurentPoly) -> LaurentPoly:
    """Gcd of polynomial parts (exponents assumed non-negative), computed by
    primitive pseudo-remainder sequences, one variable at a time.  Returns a
    constant when the inputs are coprime or too large to be worth reducing."""
    table = f.table
    one = LaurentPoly.const(table, 1)
    if f.is_zero():
        return g
    if g.is_zero():
        return f
    if f.is_const() or g.is_const():
        return one
    if len(f) * len(g) > _GCD_SIZE_CAP:
        return one
    # pick a variable where both have positive degree
    var_index = None
    best = None
    for i in range(table.nvars):
        df = max(e[i] for e in f.terms)
        dg = max(e[i] for e in g.terms)
        if df > 0 and dg > 0:
            m = min(df, dg)
            if best is None or m < best:
                best = m
                var_index = i
    if var_index is None:
        return one
    cf, cg = _content_wrt(f, var_index), _content_wrt(g, var_index)
    cont = poly_gcd(cf, cg)
    a = f.exact_div(cf) if not cf.is_const() else f
    b = g.exact_div(cg) if not cg.is_const() else g
    if a is None or b is None:  # defensive; contents divide by construction
        return one
    name = table.names[var_index]
    a, b = _int_primitive(a), _int_primitive(b)
    if a.var_degree(name) < b.var_degree(name):
        a, b = b, a
    while True:
        r = _pseudo_rem(a, b, var_index)
        if r.is_zero():
            break
        if all(e[var_index] == 0 for e in r.terms):
            b = one
            break
        a, b = b, _primitive(r, var_index)
    result = cont if b.is_const() else _primitive(b, var_index) * cont
    # normalize: positive leading coefficient, integer content 1
    le, lc = result.leading()
    from math import gcd as igcd

    gnum = 0
    lden = 1
    for c in result.terms.values():
        gnum = igcd(gnum, c.numerator)
        lden = lden * c.denominator // igcd(lden, c.denominator)
    scale = Fraction(lden, gnum) if gnum else Fraction(1)
    if lc < 0:
        scale = -scale
    return result.scale(scale)


class RationalFunction:
    """Element of the fraction field, as a lazily normalized num/den pair."""

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly | None = None, reduce: bool = True):
        if den is None:
            den = LaurentPoly.const(num.table, 1)
        if den.is_zero():
            raise DivisionByZero("zero denominator")
        num._check(den)
        self.num = num
        self.den = den
        if reduce:
            self._reduce()

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        return cls(p, None, reduce=False)

    @classmethod
    def const(cls, table: VarTable, c) -> "RationalFunction":
        return cls(LaurentPoly.const(table, c), None, reduce=False)

    @classmethod
    def var(cls, table: VarTable, name: str, power: int = 1) -> "RationalFunction":
        return cls(LaurentPoly.var(table, name, power), None, reduce=False)

    # -- normalization ----------------------------------------------------

    def _reduce(self):
        num, den = self.num, self.den
        if num.is_zero():
            self.den = LaurentPoly.const(num.table, 1)
            return
        # monomial content: shift both by the common minimal exponent
        def min_exp(p):
            its = iter(p.terms)
            m = list(next(its))
            for e in its:
                for i, x in enumerate(e):
                    if x < m[i]:
                        m[i] = x
            return m

        mn, md = min_exp(num), min_exp(den)
        common = tuple(min(a, b) for a, b in zip(mn, md))
        if any(common):
            num = num.shift(tuple(-x for x in common))
            den = den.shift(tuple(-x for x in common))
        # scale so den has integer content 1 and positive leading coefficient
        from math import gcd

        def content(p):
            g = 0
            l = 1
            for c in p.terms.values():
                g = gcd(g, c.numerator)
                l = l * c.denominator // gcd(l, c.denominator)
            return Fraction(g, l)

        cd = content(den)
        if cd != 1:
            num = num.scale(1 / cd)
            den = den.scale(1 / cd)
        if den.leading()[1] < 0:
            num, den = num.scale(-1), den.scale(-1)
        if den.is_const():
            c0 = den.const_value()
            if c0 != 1:
                num = num.scale(1 / c0)
                den = LaurentPoly.const(num.table, 1)
        else:
            q = num.exact_div(den)
            if q is not None:
                num, den = q, LaurentPoly.const(num.table, 1)
            else:
                g = poly_gcd(num, den)
                if not g.is_const():
                    num = num.exact_div(g)
                    den = den.exact_div(g)
                    if den.leading()[1] < 0:
                        num, den = num.scale(-1), den.scale(-1)
        self.num, self.den = num, den

    @property
    def table(self) -> VarTable:
        return self.num.table

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_const() or self.num.exact_div(self.den) is not None

    def as_poly(self) -> LaurentPoly:
        if self.den.is_const():
            return self.num.scale(1 / self.den.const_value())
        q = self.num.exact_div(self.den)
        if q is None:
            raise RingError(f"not a polynomial: {self}")
        return q

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    def __neg__(self) -> "RationalFunction":
        return RationalFunction((-self.num), self.den, reduce=False)

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return self + (-other)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        # cross-cancel first: keeps chained products small
        a, b = self.num, other.den
        q = a.exact_div(b)
        if q is not None:
            a, b = q, LaurentPoly.const(a.table, 1)
        c, d = other.num, self.den
        q = c.exact_div(d)
        if q is not None:
            c, d = q, LaurentPoly.const(c.table, 1)
        return RationalFunction(a * c, b * d)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise DivisionByZero("division by zero rational function")
        return self * RationalFunction(other.den, other.num, reduce=False)

    def inv(self) -> "RationalFunction":
        if self.is_zero():
            raise DivisionByZero("inverse of zero")
        return RationalFunction(self.den, self.num)

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inv() ** (-n)
        return RationalFunction(self.num**n, self.den**n)

    def __eq__(self, other) -> bool:
        if not isinstance(other, RationalFunction):
            return NotImplemented
        return (self.num * other.den) == (other.num * self.den)

    def __hash__(self):
        # hash through the reduced pair; equal values may collide less often
        # than ideal but equality stays exact.
        return hash((self.num, self.den))

    def substitute(self, assignment: Mapping[str, LaurentPoly]) -> "RationalFunction":
        num = self.num.substitute(assignment)
        den = self.den.substitute(assignment)
        if den.is_zero():
            raise DivisionByZero("substitution lands on a pole")
        return RationalFunction(num, den)

    def map_table(self, target: VarTable) -> "RationalFunction":
        return RationalFunction(self.num.map_table(target), self.den.map_table(target))

    def __str__(self) -> str:
        if self.den.is_const() and self.den.const_value() == 1:
            return str(self.num)
        return f"({self.num}) / ({self.den})"

    def __repr__(self) -> str:
        return f"RationalFunction({self})"

    def to_json(self) -> dict:
        return {"num": str(self.num), "den": str(self.den)}

    @classmethod
    def from_json(cls, table: VarTable, data: Mapping[str, str]) -> "RationalFunction":
        return cls(LaurentPoly.parse(table, data["num"]), LaurentPoly.parse(table, data["den"]))


def arith(x: RationalFunction, y: RationalFunction, op: str) -> RationalFunction:
    """Exact field operation; op is one of add|mul|div."""
    if op == "add":
        return x + y
    if op == "mul":
        return x * y
    if op == "div":
        if y.is_zero():
            raise DivisionByZero("div by zero")
        return x / y
    raise ValueError(f"unknown op {op!r}")


def a_degree(p: LaurentPoly, subset: Iterable[str], mode: str = "H"):
    """Degree data of a polynomial in the chosen variables.

    ``H`` returns the total degree; ``K`` returns the Newton polytope of the
    projected exponents, up to translation, as the sorted tuple of vertex
    differences from the lexicographically least vertex.
    """
    if p.is_zero():
        raise ZeroPolynomial("degree of the zero polynomial")
    if mode == "H":
        return p.total_degree(subset)
    if mode != "K":
        raise ValueError("mode must be H or K")
    pts = sorted(p.support(subset))
    verts = _hull_vertices(pts)
    base = min(verts)
    return tuple(sorted(tuple(x - b for x, b in zip(v, base)) for v in verts))


def _hull_vertices(pts: list[tuple[int, ...]]) -> list[tuple[int, ...]]:
    """Vertices of the convex hull of integer points, by exact feasibility."""
    pts = sorted(set(pts))
    if len(pts) <= 2:
        return pts
    verts = []
    for i, v in enumerate(pts):
        others = [p for j, p in enumerate(pts) if j != i]
        if not _in_hull(v, others):
            verts.append(v)
    return verts


def _in_hull(v: tuple[int, ...], pts: list[tuple[int, ...]]) -> bool:
    """Exact membership of v in conv(pts) via Fourier-Motzkin on the
    barycentric-coordinate system."""
    from .arrange import fm_feasible  # local import: arrange depends on ring

    d = len(v)
    m = len(pts)
    # unknowns: lambda_1..lambda_m ; constraints lambda_i >= 0,
    # sum lambda_i = 1, sum lambda_i p_i = v
    ineqs = []
    for i in range(m):
        coef = [Fraction(0)] * m
        coef[i] = Fraction(1)
        ineqs.append((coef, Fraction(0), ">="))
    eqs = [([Fraction(1)] * m, Fraction(1))]
    for k in range(d):
        eqs.append(([Fraction(p[k]) for p in pts], Fraction(v[k])))
    return fm_feasible(ineqs, eqs) is not None


def limit_at_infinity(f: RationalFunction, var: str, order: int) -> list[RationalFunction]:
    """First ``order`` coefficients of the expansion of f in powers of 1/var.

    Requires the expansion to be regular at infinity; otherwise raises
    PoleAtInfinity with the pole order.
    """
    if f.is_zero():
        return [RationalFunction.const(f.table, 0) for _ in range(order)]
    ncof = f.num.coeffs_in_var(var)
    dcof = f.den.coeffs_in_var(var)
    dn = max(ncof)
    dd = max(dcof)
    if dn > dd:
        raise PoleAtInfinity(dn - dd)
    # f = x^(dd-dn) * N(x)/D(x) with x = 1/var, D(0) != 0
    shift = dd - dn
    table = f.table
    zero = RationalFunction.const(table, 0)
    N = [RationalFunction.from_poly(ncof.get(dn - k, LaurentPoly.zero(table))) for k in range(order)]
    D = [RationalFunction.from_poly(dcof.get(dd - k, LaurentPoly.zero(table))) for k in range(order)]
    series = [zero] * order
    d0 = D[0]
    for k in range(order):
        acc = N[k]
        for j in range(1, k + 1):
            acc = acc - D[j] * series[k - j]
        series[k] = acc / d0
    out = [zero] * order
    for k in range(order):
        if k + shift < order:
            out[k + shift] = series[k]
    return out
