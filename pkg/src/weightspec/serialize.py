"""File formats: matrix text, spectrum JSON/CSV, summary JSON, records CSV.

Matrix text format::

    n k p m
    c0 c1 ... cm          # reduction polynomial, constant term first
    g11 g12 ... g1n       # k rows of n element indices
    ...

JSON outputs keep every count and every exact rational as a decimal
string (rationals as "numerator/denominator", integers plain), so
arbitrary-precision values survive any JSON reader.  Keys are sorted and
there are no timestamps, making output byte-stable for a fixed input.

Records CSV header: ``idx,seed,rank,full_rank,a1,a2,dmin,N_1,...,N_n``.
Booleans are 1/0; disabled checks and the minimum distance of a zero
sample are empty fields.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import IO, Iterable

from .codes import LinearCode, WeightSpectrum
from .ensemble import EnsembleSummary, SampleRecord
from .gf import field_create
from .linalg import MatrixGF, matrix


def frac_str(x: Fraction | int | None) -> str | None:
    """Exact decimal-string form: "3", "77376/78125", or None."""
    if x is None:
        return None
    if isinstance(x, int):
        return str(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_frac(s: str) -> Fraction:
    return Fraction(s)


def json_stable(obj) -> str:
    """Canonical JSON text: sorted keys, newline-terminated."""
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


# ---------------------------------------------------------------------------
# matrix text format
# ---------------------------------------------------------------------------

def matrix_text(M: MatrixGF) -> str:
    F = M.field
    lines = [
        f"{M.n} {M.k} {F.p} {F.m}",
        " ".join(str(c) for c in F.modulus),
    ]
    lines += [" ".join(str(e) for e in row) for row in M.rows]
    return "\n".join(lines) + "\n"


def parse_matrix_text(text: str) -> MatrixGF:
    lines = [ln for ln in (s.strip() for s in text.splitlines()) if ln]
    if len(lines) < 3:
        raise ValueError("matrix text needs a header, a modulus line and rows")
    try:
        n, k, p, m = (int(t) for t in lines[0].split())
        modulus = [int(t) for t in lines[1].split()]
        rows = [[int(t) for t in ln.split()] for ln in lines[2 : 2 + k]]
    except ValueError as exc:
        raise ValueError(f"malformed matrix text: {exc}") from exc
    if len(rows) != k:
        raise ValueError(f"expected {k} matrix rows, found {len(rows)}")
    if any(len(r) != n for r in rows):
        raise ValueError(f"every row must have {n} entries")
    field = field_create(p, m, modulus)
    return matrix(field, rows)


def write_matrix(M: MatrixGF, fh: IO[str]) -> None:
    fh.write(matrix_text(M))


def read_matrix(fh: IO[str]) -> MatrixGF:
    return parse_matrix_text(fh.read())


def read_code(path: str) -> LinearCode:
    with open(path, "r", encoding="utf-8") as fh:
        return LinearCode(read_matrix(fh))


# ---------------------------------------------------------------------------
# spectra
# ---------------------------------------------------------------------------

def spectrum_json_dict(spec: WeightSpectrum, q: int, extra: dict | None = None) -> dict:
    out = {
        "n": spec.n,
        "q": q,
        "counts": [str(c) for c in spec.counts],
    }
    if extra:
        out.update(extra)
    return out


def counts_csv_rows(counts: Iterable[int | Fraction]) -> list[tuple[str, str]]:
    return [(str(w), frac_str(c)) for w, c in enumerate(counts)]


# ---------------------------------------------------------------------------
# ensemble outputs
# ---------------------------------------------------------------------------

RECORDS_CSV_BOOL = {True: "1", False: "0", None: ""}


def records_csv(records: list[SampleRecord], n: int) -> str:
    header = "idx,seed,rank,full_rank,a1,a2,dmin," + ",".join(
        f"N_{w}" for w in range(1, n + 1)
    )
    lines = [header]
    for r in records:
        cells = [
            str(r.index),
            str(r.seed),
            str(r.rank),
            RECORDS_CSV_BOOL[r.full_rank],
            RECORDS_CSV_BOOL[r.a1],
            RECORDS_CSV_BOOL[r.a2],
            "" if r.dmin is None else str(r.dmin),
        ]
        cells += [str(c) for c in r.counts[1:]]
        lines.append(",".join(cells))
    return "\n".join(lines) + "\n"


def summary_json_dict(summary: EnsembleSummary) -> dict:
    cfg = summary.config
    th = summary.thresholds
    per_weight = {
        str(w): {
            "mean": frac_str(summary.mean[w]),
            "variance": frac_str(summary.variance[w]),
            "mu": frac_str(summary.mu[w]),
            "var_bound": frac_str(summary.var_bound[w]),
            "concentration_events": (
                str(summary.concentration_events[w])
                if w in summary.concentration_events
                else None
            ),
            "chebyshev_bound": (
                frac_str(summary.chebyshev_bound[w])
                if w in summary.chebyshev_bound
                else None
            ),
        }
        for w in range(1, cfg.n + 1)
    }
    return {
        "schema": 1,
        "config": {
            "n": cfg.n,
            "k": cfg.k,
            "p": cfg.p,
            "m": cfg.m,
            "q": cfg.q,
            "samples": cfg.samples,
            "master_seed": str(cfg.master_seed),
            "strategy": cfg.strategy,
            "cap": str(cfg.cap),
            "checks": {
                "a1": cfg.check_a1,
                "a2": cfg.check_a2,
                "concentration": cfg.check_concentration,
            },
            "tracked_weights": (
                list(cfg.tracked_weights) if cfg.tracked_weights else None
            ),
        },
        "counts": {
            "samples": str(summary.samples),
            "full_rank": str(summary.full_rank_count),
            "a1": None if summary.a1_count is None else str(summary.a1_count),
            "a2": None if summary.a2_count is None else str(summary.a2_count),
            "q_joint": str(summary.q_joint_count),
        },
        "fractions": {
            "full_rank": frac_str(summary.fraction_full_rank),
            "a1": frac_str(summary.fraction_a1),
            "a2": frac_str(summary.fraction_a2),
            "q_conditional": frac_str(summary.fraction_q_conditional),
            "q_joint": frac_str(summary.fraction_q_joint),
        },
        "thresholds": None
        if th is None
        else {
            "w_low_real": th.w_low_real,
            "w_low": th.w_low,
            "w_up": th.w_up,
            "a1_vacuous": th.a1_vacuous,
            "a2_vacuous": th.a2_vacuous,
            "a2_band": frac_str(th.a2_band),
        },
        "theorem_bound": {
            "raw": frac_str(summary.theorem_bound_raw),
            "clamped": frac_str(summary.theorem_bound_clamped),
        },
        "per_weight": per_weight,
        "violations": list(summary.violations),
    }


def summary_json(summary: EnsembleSummary) -> str:
    return json_stable(summary_json_dict(summary))
