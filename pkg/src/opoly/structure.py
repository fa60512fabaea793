"""Structural coefficient formulas and exact relation checking.

For a family given by sigma = a x^2 + b x + c and tau = d x + e this module
evaluates, per degree n:

* the three-term recurrence triple (A_n, B_n, C_n) and its monic form
  (a_n, b_n, c_n) with x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1};
* the derivative/difference-rule triple (alpha_n, beta_n, gamma_n) and the
  forward-difference variant (S_n, T_n, R_n);
* the starred / primed / hatted triples: the recurrence satisfied by the
  derivatives (differences), the rule expressing sigma acting on second
  derivatives, and the expansion of p_n in terms of neighboring derivatives
  (equivalently the antiderivative / antidifference of p_n).

Every triple is an exact rational expression in (a, b, c, d, e, n) and the
standardization k_n.  Two independent routes exist throughout: the explicit
formulas, and a brute-force oracle that solves the defining second-order
equation coefficient-wise and extracts triples by exact linear solves.  The
shipped formulas are required to match the oracle (see ``diagnostics``).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .algebra import (
    FieldElement,
    Polynomial,
    as_field,
    factorial,
    format_rational,
    pochhammer,
)
from .families import (
    CONTINUOUS,
    DISCRETE,
    AdmissibilityError,
    FamilySpec,
    LeadingRule,
    catalog,
    lambda_n,
    require_admissible,
)


@dataclass(frozen=True)
class CoefficientTriple:
    """Coefficients on the (n+1), n, (n-1) neighbors in a structure relation."""

    hi: FieldElement
    mid: FieldElement
    lo: FieldElement

    def __iter__(self):
        yield from (self.hi, self.mid, self.lo)


# ---------------------------------------------------------------------------
# Recurrence coefficients (continuous and discrete explicit formulas)
# ---------------------------------------------------------------------------

def _sum_factor(spec: FamilySpec, n: int) -> FieldElement:
    """The shared bracket of the C_n / gamma_n numerators."""
    a, b, c, d, e = spec.abcde()
    if spec.kind == CONTINUOUS:
        return ((n - 1) * (a * n + d - a) * (4 * c * a - b * b)
                + a * e * e + d * d * c - b * e * d)
    return ((n - 1) * (d + a * n - a)
            * (a * n * d - d * b - a * d + a * a * n * n - 2 * a * a * n
               + 4 * c * a + a * a + 2 * e * a - b * b)
            - d * b * e + d * d * c + a * e * e)


def _cn_denominator(spec: FamilySpec, n: int) -> FieldElement:
    a, d = spec.a, spec.d
    if spec.kind == CONTINUOUS:
        return ((d - 2 * a + 2 * a * n) ** 2 * (2 * a * n - 3 * a + d)
                * (2 * a * n - a + d))
    return ((d - a + 2 * a * n) * (d + 2 * a * n - 3 * a)
            * (2 * a * n - 2 * a + d) ** 2)


def recurrence_coeffs(spec: FamilySpec, n: int) -> CoefficientTriple:
    """(A_n, B_n, C_n) with p_{n+1} = (A_n x + B_n) p_n - C_n p_{n-1}.

    C_0 is reported as 0 (it multiplies p_{-1} = 0), and B_0 as the reduced
    value (e/d) A_0 (at n = 0 the general expression carries a removable
    common factor d - 2a).
    """
    a, b, c, d, e = spec.abcde()
    A = spec.k(n + 1) / spec.k(n)
    if n == 0:
        return CoefficientTriple(A, e / d * A, Fraction(0))
    if spec.kind == CONTINUOUS:
        b_num = 2 * b * n * (a * n + d - a) - e * (-d + 2 * a)
    else:
        b_num = n * (d + 2 * b) * (d + a * n - a) + e * (d - 2 * a)
    b_den = (d + 2 * a * n) * (d - 2 * a + 2 * a * n) if spec.kind == CONTINUOUS \
        else (2 * a * n - 2 * a + d) * (d + 2 * a * n)
    if b_den == 0:
        raise AdmissibilityError(f"B_{n} denominator vanishes for {spec.name or spec.abcde()}")
    B = b_num / b_den * A
    den = _cn_denominator(spec, n)
    if den == 0:
        raise AdmissibilityError(f"C_{n} denominator vanishes for {spec.name or spec.abcde()}")
    C = -_sum_factor(spec, n) * (a * n + d - 2 * a) * n / den * (spec.k(n + 1) / spec.k(n - 1))
    return CoefficientTriple(A, B, C)


def xpn_coeffs(spec: FamilySpec, n: int) -> CoefficientTriple:
    """(a_n, b_n, c_n) with x p_n = a_n p_{n+1} + b_n p_n + c_n p_{n-1}."""
    A, B, C = recurrence_coeffs(spec, n)
    return CoefficientTriple(1 / A, -B / A, C / A)


def derivative_rule_coeffs(spec: FamilySpec, n: int) -> CoefficientTriple:
    """(alpha_n, beta_n, gamma_n) of the derivative rule

    continuous: sigma p_n' = alpha p_{n+1} + beta p_n + gamma p_{n-1}
    discrete:   sigma nabla p_n = alpha p_{n+1} + beta p_n + gamma p_{n-1}
    """
    if n < 1:
        raise ValueError("derivative rule needs n >= 1")
    a, b, c, d, e = spec.abcde()
    alpha = a * n * (spec.k(n) / spec.k(n + 1))
    if spec.kind == CONTINUOUS:
        beta_num = -(n * (a * n + d - a) * (2 * e * a - d * b))
        beta_den = (d + 2 * a * n) * (d - 2 * a + 2 * a * n)
        gamma_extra = (a * n + d - a) * (a * n + d - 2 * a) * n
    else:
        beta_num = -(n * (d + a * n - a)
                     * (2 * a * n * d - a * d - d * b + 2 * e * a
                        - 2 * a * a * n + 2 * a * a * n * n))
        beta_den = (2 * a * n - 2 * a + d) * (d + 2 * a * n)
        gamma_extra = (d + a * n - a) * (a * n + d - 2 * a) * n
    if beta_den == 0:
        raise AdmissibilityError(f"beta_{n} denominator vanishes")
    beta = beta_num / beta_den
    den = _cn_denominator(spec, n)
    if den == 0:
        raise AdmissibilityError(f"gamma_{n} denominator vanishes")
    gamma = _sum_factor(spec, n) * gamma_extra / den * (spec.k(n) / spec.k(n - 1))
    return CoefficientTriple(alpha, beta, gamma)


def delta_rule_coeffs(spec: FamilySpec, n: int) -> CoefficientTriple:
    """(S_n, T_n, R_n) with (sigma + tau) Delta p_n = S p_{n+1} + T p_n + R p_{n-1}."""
    if spec.kind != DISCRETE:
        raise ValueError("delta rule applies to discrete families")
    alpha, beta, gamma = derivative_rule_coeffs(spec, n)
    return CoefficientTriple(alpha, beta - lambda_n(spec, n), gamma)


# ---------------------------------------------------------------------------
# Theorem-1 triples (starred / primed / hatted)
# ---------------------------------------------------------------------------

def derived_system(spec: FamilySpec) -> FamilySpec:
    """The family satisfied by the derivatives q_m = p'_{m+1} (or Delta p_{m+1}).

    Its equation data is (a, b, c, d + 2a, e + b) in the continuous case and
    (a, b, c, d + 2a, d + e + a + b) in the discrete case; its leading
    coefficients are (m+1) k_{m+1}.
    """
    a, b, c, d, e = spec.abcde()
    new_e = e + b if spec.kind == CONTINUOUS else d + e + a + b
    base = spec.leading

    def k(m: int, base=base) -> FieldElement:
        return (m + 1) * base(m + 1)

    try:
        return FamilySpec(spec.kind, a, b, c, d + 2 * a, new_e,
                          LeadingRule(k, f"(n+1)k(n+1) of {base.label}"),
                          f"{spec.name}'" if spec.name else "", spec.params)
    except ValueError as exc:  # d + 2a = 0: the derivative system degenerates
        raise AdmissibilityError(str(exc)) from exc


def theorem1_coeffs(spec: FamilySpec, n: int) -> dict[str, CoefficientTriple]:
    """The starred, primed and hatted triples for degree n >= 1.

    starred: x D p_n   = alpha* D p_{n+1} + beta* D p_n + gamma* D p_{n-1}
    primed:  sigma D' p_n = a' D p_{n+1} + b' D p_n + c' D p_{n-1}
    hatted:  p_n       = a^ D p_{n+1} + b^ D p_n + c^ D p_{n-1}

    where D is d/dx (continuous) or the forward difference (discrete), and
    D' p_n means p_n'' resp. Delta nabla p_n.  The values are obtained from
    the recurrence/derivative-rule formulas through the substitution
    d -> d + 2a (with the matching e) and exact elimination.  At n = 1 the
    lo components multiply D p_0 = 0; the values reported there are the
    closed forms in n (the ones the antiderivative tables print), not the
    arbitrary convention 0.
    """
    if n < 1:
        raise ValueError("theorem1 triples need n >= 1")
    a, b, c, d, e = spec.abcde()
    derived = derived_system(spec)
    head = xpn_coeffs(derived, n - 1)
    # gamma*_n = -S'(n-1) (an + d' - 3a) n / D'(n-1) * k_n/k_{n-1}: the
    # degree-index (n-1) pole of the raw quotient route cancels, leaving a
    # form that is regular at n = 1.
    den = _cn_denominator(derived, n - 1)
    if den == 0:
        raise AdmissibilityError(f"starred gamma*_{n} denominator vanishes")
    star_lo = (-_sum_factor(derived, n - 1) * (a * n + derived.d - 3 * a) * n / den
               * (spec.k(n) / spec.k(n - 1)))
    starred = CoefficientTriple(head.hi, head.mid, star_lo)
    alpha, beta, gamma = derivative_rule_coeffs(spec, n)
    sig_delta = b if spec.kind == CONTINUOUS else a + b
    primed = CoefficientTriple(alpha - 2 * a * starred.hi,
                               beta - 2 * a * starred.mid - sig_delta,
                               gamma - 2 * a * starred.lo)
    lam = lambda_n(spec, n)
    if lam == 0:
        raise AdmissibilityError(f"lambda_{n} = 0; hatted triple undefined")
    hatted = CoefficientTriple(-(primed.hi + d * starred.hi) / lam,
                               -(primed.mid + d * starred.mid + e) / lam,
                               -(primed.lo + d * starred.lo) / lam)
    return {"starred": starred, "primed": primed, "hatted": hatted}


def antiderivative(spec: FamilySpec, n: int) -> CoefficientTriple:
    """Expansion of the antiderivative of p_n over p_{n+1}, p_n, p_{n-1}.

    Integrating the hatted relation once gives
    int p_n dx = a^ p_{n+1} + b^ p_n + c^ p_{n-1} + const.
    """
    if spec.kind != CONTINUOUS:
        raise ValueError("antiderivative applies to continuous families")
    return theorem1_coeffs(spec, n)["hatted"]


def antidifference(spec: FamilySpec, n: int) -> CoefficientTriple:
    """Expansion of the antidifference of p_n over p_{n+1}, p_n, p_{n-1}."""
    if spec.kind != DISCRETE:
        raise ValueError("antidifference applies to discrete families")
    return theorem1_coeffs(spec, n)["hatted"]


# ---------------------------------------------------------------------------
# Generation and the independent equation-solver oracle
# ---------------------------------------------------------------------------

def generate(spec: FamilySpec, n_max: int) -> list[Polynomial]:
    """p_0 .. p_{n_max} via the three-term recurrence, monomial basis."""
    require_admissible(spec, max(n_max - 1, 0), ("recurrence",))
    polys = [Polynomial.const(spec.k(0))]
    if n_max == 0:
        return polys
    x = Polynomial.x()
    prev = Polynomial.zero()
    for n in range(n_max):
        A, B, C = recurrence_coeffs(spec, n)
        nxt = (x.scale(A) + Polynomial.const(B)) * polys[-1] - prev.scale(C)
        prev = polys[-1]
        polys.append(nxt)
    for n, p in enumerate(polys):
        if p.degree() != n or p.leading() != spec.k(n):
            raise AdmissibilityError(f"generated p_{n} has wrong degree or leading coefficient")
    return polys


def solve_equation(spec: FamilySpec, n: int) -> Polynomial:
    """Degree-n solution of the defining equation with leading k_n.

    Brute-force oracle: applies the second-order operator to each monomial
    and back-substitutes, independently of every transcribed formula.
    """
    columns = [spec.apply_operator(Polynomial.monomial(j), n) for j in range(n + 1)]
    coeffs: list[FieldElement] = [Fraction(0)] * (n + 1)
    coeffs[n] = spec.k(n)
    for m in range(n - 1, -1, -1):
        residual = sum((columns[j].coeff(m) * coeffs[j] for j in range(m + 1, n + 1)),
                       start=as_field(0))
        diag = columns[m].coeff(m)  # lambda_n - lambda_m
        if diag == 0:
            raise AdmissibilityError(f"degenerate equation: lambda_{m} = lambda_{n}")
        coeffs[m] = -residual / diag
    return Polynomial(coeffs)


def solve_three_term(lhs: Polynomial, hi: Polynomial, mid: Polynomial,
                     lo: Polynomial) -> CoefficientTriple:
    """Solve lhs = x_hi*hi + x_mid*mid + x_lo*lo exactly (degrees must descend)."""
    parts = [hi, mid, lo]
    values: list[FieldElement] = []
    rem = lhs
    for part in parts:
        if part.is_zero():
            values.append(Fraction(0))
            continue
        deg = part.degree()
        coeff = rem.coeff(deg) / part.leading()
        values.append(coeff)
        rem = rem - part.scale(coeff)
    if not rem.is_zero():
        raise ValueError("relation has no three-term solution; residual " + repr(rem))
    return CoefficientTriple(*values)


def oracle_triples(spec: FamilySpec, n: int) -> dict[str, CoefficientTriple]:
    """All structure triples for degree n solved from oracle polynomials."""
    polys = [solve_equation(spec, m) for m in range(n + 2)]
    x = Polynomial.x()
    pn, pp, pm = polys[n], polys[n + 1], polys[n - 1] if n >= 1 else Polynomial.zero()
    sig = spec.sigma()
    out: dict[str, CoefficientTriple] = {}
    abc = solve_three_term(x * pn, pp, pn, pm)
    out["xpn"] = abc
    out["recurrence"] = CoefficientTriple(1 / abc.hi, -abc.mid / abc.hi, abc.lo / abc.hi)
    if n < 1:
        return out
    if spec.kind == CONTINUOUS:
        diff = [p.derivative() for p in polys]
        second = sig * pn.derivative().derivative()
        out["derivative"] = solve_three_term(sig * pn.derivative(), pp, pn, pm)
    else:
        diff = [p.delta() for p in polys]
        second = sig * pn.delta().nabla()
        out["derivative"] = solve_three_term(sig * pn.nabla(), pp, pn, pm)
        out["delta"] = solve_three_term((sig + spec.tau()) * pn.delta(), pp, pn, pm)
    dp, dpp, dpm = diff[n], diff[n + 1], diff[n - 1]
    out["starred"] = solve_three_term(x * dp, dpp, dp, dpm)
    out["primed"] = solve_three_term(second, dpp, dp, dpm)
    out["hatted"] = solve_three_term(pn, dpp, dp, dpm)
    return out


# ---------------------------------------------------------------------------
# Relation verification
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RelationCheck:
    relation: str
    n: int
    ok: bool
    residual: str = ""


@dataclass(frozen=True)
class StructureReport:
    spec_name: str
    n_max: int
    checks: tuple[RelationCheck, ...]

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> tuple[RelationCheck, ...]:
        return tuple(c for c in self.checks if not c.ok)


RELATION_NAMES = ("equation", "recurrence", "derivative_rule", "delta_rule",
                  "starred", "primed", "hatted")


def verify_structure(spec: FamilySpec, n_max: int,
                     relations: tuple[str, ...] = RELATION_NAMES) -> StructureReport:
    """Exact residuals of every structure relation for 1 <= n <= n_max - 1.

    The equation and recurrence residuals are checked from n = 0.  A zero
    residual polynomial means the relation holds identically.
    """
    if n_max < 2:
        raise ValueError("verify_structure needs n_max >= 2")
    unknown = set(relations) - set(RELATION_NAMES)
    if unknown:
        raise KeyError(f"unknown relations: {sorted(unknown)}")
    polys = generate(spec, n_max + 1)
    x = Polynomial.x()
    sig, tau = spec.sigma(), spec.tau()
    continuous = spec.kind == CONTINUOUS
    diff = [p.derivative() if continuous else p.delta() for p in polys]
    checks: list[RelationCheck] = []

    def record(relation: str, n: int, residual: Polynomial):
        checks.append(RelationCheck(relation, n, residual.is_zero(),
                                    "" if residual.is_zero() else repr(residual)))

    for n in range(n_max + 1):
        if "equation" in relations:
            record("equation", n, spec.apply_operator(polys[n], n))
        if "recurrence" in relations and n <= n_max - 1:
            A, B, C = recurrence_coeffs(spec, n)
            prev = polys[n - 1] if n >= 1 else Polynomial.zero()
            record("recurrence", n,
                   polys[n + 1] - (x.scale(A) + Polynomial.const(B)) * polys[n] + prev.scale(C))
        if n < 1 or n > n_max - 1:
            continue
        pp, pn, pm = polys[n + 1], polys[n], polys[n - 1]
        dpp, dpn, dpm = diff[n + 1], diff[n], diff[n - 1]
        if "derivative_rule" in relations:
            alpha, beta, gamma = derivative_rule_coeffs(spec, n)
            lhs = sig * pn.derivative() if continuous else sig * pn.nabla()
            record("derivative_rule", n,
                   lhs - pp.scale(alpha) - pn.scale(beta) - pm.scale(gamma))
        if "delta_rule" in relations and not continuous:
            S, T, R = delta_rule_coeffs(spec, n)
            record("delta_rule", n,
                   (sig + tau) * pn.delta() - pp.scale(S) - pn.scale(T) - pm.scale(R))
        triples = theorem1_coeffs(spec, n)
        if "starred" in relations:
            t = triples["starred"]
            record("starred", n, x * dpn - dpp.scale(t.hi) - dpn.scale(t.mid) - dpm.scale(t.lo))
        if "primed" in relations:
            t = triples["primed"]
            lhs = sig * pn.derivative().derivative() if continuous else sig * pn.delta().nabla()
            record("primed", n, lhs - dpp.scale(t.hi) - dpn.scale(t.mid) - dpm.scale(t.lo))
        if "hatted" in relations:
            t = triples["hatted"]
            record("hatted", n, pn - dpp.scale(t.hi) - dpn.scale(t.mid) - dpm.scale(t.lo))
    return StructureReport(spec.name or str(spec.abcde()), n_max, tuple(checks))


# ---------------------------------------------------------------------------
# The falling-factorial antidifference and the binomial-sum identity
# ---------------------------------------------------------------------------

def binomial_partial_sum(n: int, m: int) -> tuple[Fraction, Fraction]:
    """sum_{k=0..m} C(n+k, k) via the antidifference route, and C(n+m+1, m).

    The antidifference of x^(falling n) is x^(falling n+1)/(n+1): the hatted
    triple of the falling-factorial family is (1/(n+1), 0, 0).  Summing the
    telescoping differences turns the binomial sum into a single evaluation.
    """
    if n < 0 or m < 0:
        raise ValueError("need n, m >= 0")
    fam = catalog("falling-factorial")
    if n >= 1:
        hat = antidifference(fam, n)
        if (hat.mid, hat.lo) != (0, 0) or hat.hi != Fraction(1, n + 1):
            raise AssertionError("falling-factorial antidifference is not x^(n+1)/(n+1)")
    anti = Polynomial.monomial(n + 1, Fraction(1, n + 1), basis=fam.basis())
    # sum_{k=0..m} C(n+k,k) = (1/n!) * sum_{j=n..m+n} j^(falling n)
    #                        = (anti(m+n+1) - anti(n)) / n!
    lhs = (anti(Fraction(m + n + 1)) - anti(Fraction(n))) / factorial(n)
    rhs = as_field(pochhammer(Fraction(n + 2), m)) / factorial(m)  # C(n+m+1, m)
    return lhs, rhs


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------

def table_to_json(relation: str, entries: list[tuple[int, CoefficientTriple]]) -> dict:
    """CoefficientTable JSON: one row per n with lo/mid/hi rational strings."""
    return {
        "relation": relation,
        "entries": [
            {"n": n, "lo": format_rational(t.lo), "mid": format_rational(t.mid),
             "hi": format_rational(t.hi)}
            for n, t in entries
        ],
    }
