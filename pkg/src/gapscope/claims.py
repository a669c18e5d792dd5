"""Exact verification of rational-function inequalities over (sigma, mu) boxes.

A claim asserts  max_i lhs_i(s, mu) <= rhs(s, mu)  on a box
[s_lo, s_hi] x [mu_lo, mu_hi], where each side is a sigma-rational function
plus (1/mu) times a sigma-rational function.  Such forms are linear in 1/mu,
so the extremes in mu sit at the interval endpoints; substituting each
endpoint reduces the claim to sign conditions on univariate polynomials,
decided exactly by the Sturm machinery in `algebra`.

Expressions are written over the symbols `s` (sigma) and `u` (short for
1/mu).  Ledger files are line-oriented:

    id | lhs_1; lhs_2; ... | rhs | s_lo, s_hi | mu_lo, mu_hi [| strict]

with rational literals `p/q`, `all` for the default mu range, and a pure
ordering claim written with an algebraic literal on the left:

    crossing | root(1176*s^2 - 1897*s + 763; 19/25, 77/100) | 53/68 | - | - | strict
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .algebra import (
    AlgebraicNumber,
    Poly,
    count_roots_open,
    degree,
    isolate_roots_open,
    nonneg_on_interval,
    padd,
    pdivmod,
    peval,
    pgcd,
    pmul,
    poly,
    pscale,
    psub,
)

Q = Fraction

MU_RANGE = (Q(4, 3), Q(19, 9))  # global range of mu = log x1 / log T0


class IllPosedClaimError(ValueError):
    """A denominator changes sign inside the claim's sigma interval."""

    def __init__(self, message: str, root_interval: tuple[Fraction, Fraction]):
        super().__init__(message)
        self.root_interval = root_interval


# ---------------------------------------------------------------------------
# Rational functions of sigma, linear in u = 1/mu
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatFn:
    """num(s)/den(s) with integer-scaled Fraction coefficients."""

    num: tuple[Fraction, ...]
    den: tuple[Fraction, ...]

    @staticmethod
    def make(num, den=(1,)) -> "RatFn":
        n, d = poly(num), poly(den)
        if not d:
            raise ZeroDivisionError("zero denominator")
        g = pgcd(n, d)
        if degree(g) > 0:
            n = pdivmod(n, g)[0]
            d = pdivmod(d, g)[0]
        if d and d[-1] < 0:
            n, d = pscale(n, Q(-1)), pscale(d, Q(-1))
        return RatFn(tuple(n), tuple(d))

    @staticmethod
    def const(c) -> "RatFn":
        return RatFn.make([Q(c)])

    def __add__(self, other: "RatFn") -> "RatFn":
        a, b = list(self.num), list(self.den)
        c, d = list(other.num), list(other.den)
        return RatFn.make(padd(pmul(a, d), pmul(c, b)), pmul(b, d))

    def __sub__(self, other: "RatFn") -> "RatFn":
        a, b = list(self.num), list(self.den)
        c, d = list(other.num), list(other.den)
        return RatFn.make(psub(pmul(a, d), pmul(c, b)), pmul(b, d))

    def __mul__(self, other: "RatFn") -> "RatFn":
        return RatFn.make(
            pmul(list(self.num), list(other.num)), pmul(list(self.den), list(other.den))
        )

    def __truediv__(self, other: "RatFn") -> "RatFn":
        if not other.num:
            raise ZeroDivisionError
        return RatFn.make(
            pmul(list(self.num), list(other.den)), pmul(list(self.den), list(other.num))
        )

    def is_zero(self) -> bool:
        return not self.num

    def __call__(self, s: Fraction) -> Fraction:
        dv = peval(list(self.den), s)
        if dv == 0:
            raise ZeroDivisionError(f"denominator vanishes at s={s}")
        return peval(list(self.num), s) / dv


ZERO = RatFn.make([0])
ONE = RatFn.make([1])
SIGMA = RatFn.make([0, 1])


@dataclass(frozen=True)
class MuLinear:
    """a(s) + u * b(s) with u = 1/mu."""

    a: RatFn
    b: RatFn = ZERO

    def __add__(self, o: "MuLinear") -> "MuLinear":
        return MuLinear(self.a + o.a, self.b + o.b)

    def __sub__(self, o: "MuLinear") -> "MuLinear":
        return MuLinear(self.a - o.a, self.b - o.b)

    def __mul__(self, o: "MuLinear") -> "MuLinear":
        if not self.b.is_zero() and not o.b.is_zero():
            raise ValueError("product would be quadratic in 1/mu")
        return MuLinear(self.a * o.a, self.a * o.b + self.b * o.a)

    def __truediv__(self, o: "MuLinear") -> "MuLinear":
        if not o.b.is_zero():
            raise ValueError("division by a u-dependent expression")
        return MuLinear(self.a / o.a, self.b / o.a)

    def __pow__(self, e: int) -> "MuLinear":
        if e < 0:
            raise ValueError("negative powers not supported")
        out = MuLinear(ONE)
        for _ in range(e):
            out = out * self
        return out

    def at_u(self, u: Fraction) -> RatFn:
        return self.a + RatFn.const(u) * self.b

    def __call__(self, s: Fraction, mu: Fraction) -> Fraction:
        return self.a(s) + self.b(s) / Q(mu)


U = MuLinear(ZERO, ONE)
S = MuLinear(SIGMA)


def ml(a, b=0) -> MuLinear:
    """MuLinear from constants/rationals: a(s) given as RatFn or scalar."""
    aa = a if isinstance(a, RatFn) else RatFn.const(a)
    bb = b if isinstance(b, RatFn) else RatFn.const(b)
    return MuLinear(aa, bb)


def rf(num, den=(1,)) -> RatFn:
    return RatFn.make(num, den)


# ---------------------------------------------------------------------------
# Expression parser (for ledger files)
# ---------------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(\d+|[su]|\*\*|[()+\-*/^])")


def _tokenize(text: str) -> list[str]:
    out = []
    pos = 0
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m:
            raise ValueError(f"bad token at {text[pos:pos+12]!r}")
        out.append("^" if m.group(1) == "**" else m.group(1))
        pos = m.end()
    return out


def parse_expression(text: str) -> MuLinear:
    """Parse an expression in s and u into a MuLinear value."""
    tokens = _tokenize(text)
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def take(tok=None):
        nonlocal pos
        if pos >= len(tokens) or (tok and tokens[pos] != tok):
            raise ValueError(f"expected {tok} at position {pos} in {text!r}")
        pos += 1
        return tokens[pos - 1]

    def atom() -> MuLinear:
        t = peek()
        if t == "(":
            take("(")
            v = expr()
            take(")")
            return v
        if t == "s":
            take()
            return S
        if t == "u":
            take()
            return U
        if t and t.isdigit():
            take()
            return ml(Q(int(t)))
        raise ValueError(f"unexpected token {t!r} in {text!r}")

    def factor() -> MuLinear:
        neg = False
        while peek() in ("+", "-"):
            if take() == "-":
                neg = not neg
        v = atom()
        if peek() == "^":
            take("^")
            e = take()
            if not e.isdigit():
                raise ValueError("exponent must be an integer literal")
            v = v ** int(e)
        return ml(-1) * v if neg else v

    def term() -> MuLinear:
        v = factor()
        while peek() in ("*", "/"):
            op = take()
            w = factor()
            v = v * w if op == "*" else v / w
        return v

    def expr() -> MuLinear:
        v = term()
        while peek() in ("+", "-"):
            op = take()
            w = term()
            v = v + w if op == "+" else v - w
        return v

    v = expr()
    if pos != len(tokens):
        raise ValueError(f"trailing tokens in {text!r}")
    return v


def format_ratfn(r: RatFn) -> str:
    def fmt_poly(p: Sequence[Fraction]) -> str:
        if not p:
            return "0"
        parts = []
        for i, c in enumerate(p):
            if c == 0:
                continue
            if i == 0:
                parts.append(_fmt_q(c))
            elif i == 1:
                parts.append(f"{_fmt_q(c)}*s" if c != 1 else "s")
            else:
                parts.append(f"{_fmt_q(c)}*s^{i}" if c != 1 else f"s^{i}")
        return " + ".join(parts).replace("+ -", "- ") or "0"

    num = fmt_poly(r.num)
    if list(r.den) == [Q(1)]:
        return f"({num})" if ("+" in num or "-" in num[1:]) else num
    return f"({num})/({fmt_poly(r.den)})"


def _fmt_q(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def format_mulinear(v: MuLinear) -> str:
    parts = []
    if not v.a.is_zero() or v.b.is_zero():
        parts.append(format_ratfn(v.a))
    if not v.b.is_zero():
        parts.append(f"u*{format_ratfn(v.b)}")
    return " + ".join(parts)


# ---------------------------------------------------------------------------
# Claims and verdicts
# ---------------------------------------------------------------------------

@dataclass
class Claim:
    id: str
    lhs: list[MuLinear]
    rhs: MuLinear
    sigma_interval: tuple[Fraction, Fraction]
    mu_interval: tuple[Fraction, Fraction]
    strict: bool = False
    source: str = ""
    # pure ordering claim: algebraic number on the left, rational on the right
    algebraic_lhs: AlgebraicNumber | None = None

    @staticmethod
    def box(id, lhs, rhs, s_lo, s_hi, mu="all", strict=False, source="") -> "Claim":
        mu_iv = MU_RANGE if mu == "all" else (Q(mu[0]), Q(mu[1]))
        lhs_list = list(lhs) if isinstance(lhs, (list, tuple)) else [lhs]
        return Claim(id, lhs_list, rhs, (Q(s_lo), Q(s_hi)), mu_iv, strict, source)

    @staticmethod
    def ordering(id, value: AlgebraicNumber, bound, strict=True, source="") -> "Claim":
        c = Claim(id, [], ml(Q(bound)), (Q(0), Q(0)), MU_RANGE, strict, source)
        c.algebraic_lhs = value
        return c


@dataclass
class Verdict:
    claim_id: str
    holds: bool
    certificate: dict

    def counterexample(self) -> tuple[Fraction, Fraction] | None:
        ce = self.certificate.get("counterexample")
        if ce is None:
            return None
        return Q(ce["sigma"]), Q(ce["mu"])


def _certify_denominator_sign(den: Poly, a: Fraction, b: Fraction) -> int:
    """+1/-1 if den has that constant sign on [a, b]; raise if it vanishes."""
    if a == b:
        v = peval(den, a)
        if v == 0:
            raise IllPosedClaimError(f"denominator vanishes at {a}", (a, a))
        return 1 if v > 0 else -1
    for x in (a, b):
        if peval(den, x) == 0:
            raise IllPosedClaimError(f"denominator vanishes at endpoint {x}", (x, x))
    if count_roots_open(den, a, b) > 0:
        iso = isolate_roots_open(den, a, b)[0]
        raise IllPosedClaimError("denominator sign change inside interval", iso)
    mid = peval(den, (a + b) / 2)
    return 1 if mid > 0 else -1


def _nonneg_ratfn(F: RatFn, a: Fraction, b: Fraction) -> tuple[bool, dict]:
    """Decide F(s) >= 0 for s in [a, b] (claims are checked non-strictly;
    epsilon slack is dropped and the strict flag is recorded, not enforced,
    for box claims)."""
    sign = _certify_denominator_sign(list(F.den), a, b)
    h = list(F.num) if sign > 0 else pscale(list(F.num), Q(-1))
    ok, cert = nonneg_on_interval(h, a, b)
    cert["denominator_sign"] = sign
    return ok, cert


def verify_claim(claim: Claim) -> Verdict:
    """Exact verdict for max(lhs) <= rhs on the claim's box."""
    if claim.algebraic_lhs is not None:
        bound = claim.rhs.a(Q(0))
        cmp = claim.algebraic_lhs.cmp_fraction(bound)
        holds = cmp < 0 if claim.strict else cmp <= 0
        cert = {
            "kind": "algebraic-ordering",
            "bracket": [str(claim.algebraic_lhs.lo), str(claim.algebraic_lhs.hi)],
            "bound": str(bound),
            "cmp": cmp,
        }
        return Verdict(claim.id, holds, cert)

    s_lo, s_hi = claim.sigma_interval
    mu_lo, mu_hi = claim.mu_interval
    if s_lo > s_hi or mu_lo > mu_hi:
        raise ValueError(f"empty box in claim {claim.id}")
    cert: dict = {"kind": "mu-endpoint-reduction", "strict_flag": claim.strict, "checks": []}
    mu_ends = (mu_lo,) if mu_lo == mu_hi else (mu_lo, mu_hi)
    for i, lhs in enumerate(claim.lhs):
        diff = claim.rhs - lhs  # require diff >= 0
        for mu in mu_ends:
            F = diff.at_u(Q(1) / mu)
            ok, sub = _nonneg_ratfn(F, s_lo, s_hi)
            entry = {"lhs_index": i, "mu": str(mu), "result": ok, "detail": sub}
            cert["checks"].append(entry)
            if not ok:
                witness = Q(sub["counterexample"])
                cert["counterexample"] = {
                    "sigma": str(witness),
                    "mu": str(mu),
                    "lhs_value": str(lhs(witness, mu)),
                    "rhs_value": str(claim.rhs(witness, mu)),
                }
                return Verdict(claim.id, False, cert)
    return Verdict(claim.id, True, cert)


def recheck_verdict(claim: Claim, verdict: Verdict) -> bool:
    """Independent re-check: plug the counterexample, or re-run the counts."""
    if claim.algebraic_lhs is not None:
        v = AlgebraicNumber(
            list(claim.algebraic_lhs.coeffs),
            claim.algebraic_lhs.lo,
            claim.algebraic_lhs.hi,
        )
        cmp = v.cmp_fraction(claim.rhs.a(Q(0)))
        return (cmp < 0 if claim.strict else cmp <= 0) == verdict.holds
    if not verdict.holds:
        ce = verdict.certificate.get("counterexample")
        if ce is None:
            return False
        s, mu = Q(ce["sigma"]), Q(ce["mu"])
        in_box = (
            claim.sigma_interval[0] <= s <= claim.sigma_interval[1]
            and claim.mu_interval[0] <= mu <= claim.mu_interval[1]
        )
        worst = max(l(s, mu) for l in claim.lhs)
        violated = worst > claim.rhs(s, mu) if not claim.strict else worst >= claim.rhs(s, mu)
        return in_box and violated
    # holds: replay every recorded mu-endpoint reduction
    return verify_claim(claim).holds


# ---------------------------------------------------------------------------
# Ledger serialization
# ---------------------------------------------------------------------------

_ROOT_RE = re.compile(r"^root\((?P<poly>[^;]+);(?P<lo>[^,]+),(?P<hi>[^)]+)\)$")


def _parse_q(text: str) -> Fraction:
    return Q(text.strip())


def parse_ledger_line(line: str) -> Claim | None:
    body = line.split("#", 1)[0].strip()
    if not body:
        return None
    fields = [f.strip() for f in body.split("|")]
    if len(fields) not in (5, 6):
        raise ValueError(f"expected 5 or 6 fields: {line!r}")
    cid, lhs_text, rhs_text, s_text, mu_text = fields[:5]
    strict = len(fields) == 6 and fields[5] == "strict"
    m = _ROOT_RE.match(lhs_text)
    if m:
        coeffs = _poly_from_expression(m.group("poly"))
        value = AlgebraicNumber(coeffs, _parse_q(m.group("lo")), _parse_q(m.group("hi")))
        return Claim.ordering(cid, value, _parse_q(rhs_text), strict=strict)
    lhs = [parse_expression(t) for t in lhs_text.split(";")]
    rhs = parse_expression(rhs_text)
    s_lo, s_hi = (_parse_q(t) for t in s_text.split(","))
    mu: tuple[Fraction, Fraction] | str
    if mu_text == "all":
        mu = "all"
    else:
        parts = [_parse_q(t) for t in mu_text.split(",")]
        mu = (parts[0], parts[1])
    return Claim.box(cid, lhs, rhs, s_lo, s_hi, mu=mu, strict=strict)


def _poly_from_expression(text: str) -> list[Fraction]:
    v = parse_expression(text)
    if not v.b.is_zero() or list(v.a.den) != [Q(1)]:
        raise ValueError("root() needs a plain polynomial in s")
    return list(v.a.num)


def parse_ledger(text: str) -> list[Claim]:
    out = []
    for line in text.splitlines():
        c = parse_ledger_line(line)
        if c is not None:
            out.append(c)
    ids = [c.id for c in out]
    if len(set(ids)) != len(ids):
        raise ValueError("duplicate claim ids in ledger")
    return out


def format_claim(claim: Claim) -> str:
    if claim.algebraic_lhs is not None:
        a = claim.algebraic_lhs
        ptxt = format_ratfn(RatFn.make(list(a.coeffs))).strip("()")
        lhs = f"root({ptxt}; {_fmt_q(a.lo)}, {_fmt_q(a.hi)})"
        return f"{claim.id} | {lhs} | {_fmt_q(claim.rhs.a(Q(0)))} | - | - | strict"
    lhs = "; ".join(format_mulinear(l) for l in claim.lhs)
    rhs = format_mulinear(claim.rhs)
    s_lo, s_hi = claim.sigma_interval
    mu_lo, mu_hi = claim.mu_interval
    mu = "all" if (mu_lo, mu_hi) == MU_RANGE else f"{_fmt_q(mu_lo)}, {_fmt_q(mu_hi)}"
    tail = " | strict" if claim.strict else ""
    return f"{claim.id} | {lhs} | {rhs} | {_fmt_q(s_lo)}, {_fmt_q(s_hi)} | {mu}{tail}"


def format_ledger(claims: Iterable[Claim]) -> str:
    return "\n".join(format_claim(c) for c in claims) + "\n"
