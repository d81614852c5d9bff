"""Reproduction tables. Every number is computed on the fly by the engines."""

from __future__ import annotations

from fractions import Fraction

from .certify import SearchBounds, certificate_to_group, search_certificates
from .compensation import GAMMA_A5, SPECIAL_CASES, defect, defect_by_difference, gamma_a5_times
from .errors import CrossCheckError
from .numerics import format_rat, pretty_rat
from .sylow import gamma

TABLES = ("certificates", "defects", "special-cases")


def certificate_rows():
    """Squarefree 4/9 certificates with primes <= 1300 and at most 8 parts, ordered by M(Q)."""
    certs = search_certificates(Fraction(4, 9), SearchBounds(max_prime=1300, max_parts=8))
    rows = []
    for c in certs:
        cg = certificate_to_group(c)
        g = gamma(cg.expr)
        if g != GAMMA_A5:
            raise CrossCheckError(f"gamma(G(Q)) = {g} for certificate {c}")
        rows.append({"Q": c.primes, "M": cg.prime_product, "order": cg.order, "gamma": g})
    rows.sort(key=lambda r: r["M"])
    for i, r in enumerate(rows, 1):
        r["i"] = i
    return rows


def defect_rows():
    rows = []
    for p in (2, 3, 5):
        closed = defect(p, p)
        if closed != defect_by_difference(p, p):
            raise CrossCheckError(f"closed-form D_{p} disagrees with its definition")
        rows.append({"p": p, "d": p, "defect": closed})
    return rows


def special_case_rows():
    rows = []
    for spec in SPECIAL_CASES:
        rep = gamma_a5_times(spec)
        rows.append({"a": spec.a, "b": spec.b, "c": spec.c, "loss": GAMMA_A5 - rep.gamma_value})
    return rows


def rows_for(which: str):
    return {"certificates": certificate_rows, "defects": defect_rows, "special-cases": special_case_rows}[which]()


def render_text(which: str, rows) -> str:
    if which == "certificates":
        head = f"{'i':<2} {'Q_i':<30} {'M(Q_i)':>13} {'|G(Q_i)|':>15}  gamma"
        lines = [head]
        for r in rows:
            q = "{" + ",".join(map(str, r["Q"])) + "}"
            lines.append(f"{r['i']:<2} {q:<30} {r['M']:>13} {r['order']:>15}  {pretty_rat(r['gamma'])}")
        return "\n".join(lines) + "\n"
    if which == "defects":
        return "".join(f"D_{r['p']}({r['d']}) = {pretty_rat(r['defect'])}\n" for r in rows)
    lines = []
    for r in rows:
        lhs = f"a={r['a']} b={r['b']} c={r['c']}"
        loss = "" if r["loss"] == 0 else f" - {pretty_rat(r['loss'])}"
        lines.append(f"{lhs} : gamma(A5 x N) = 9/2{loss} + sum_q 1/(q^e_q + 1)")
    return "\n".join(lines) + "\n"


def to_records(which: str, rows) -> list[dict]:
    """Schema-stable records: rationals as "n/d", big integers as decimal strings."""
    if which == "certificates":
        return [
            {"i": r["i"], "Q": list(r["Q"]), "M": str(r["M"]), "order": str(r["order"]), "gamma": format_rat(r["gamma"])}
            for r in rows
        ]
    if which == "defects":
        return [{"p": r["p"], "d": r["d"], "defect": format_rat(r["defect"])} for r in rows]
    return [{"a": r["a"], "b": r["b"], "c": r["c"], "loss": format_rat(r["loss"])} for r in rows]
