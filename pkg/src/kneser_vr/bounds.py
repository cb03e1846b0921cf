"""Closed-form homology rank bounds and connectivity bounds, with table emission.

All arithmetic is exact: binomials are Python ints and the connectivity
ratio is a ``Fraction``.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, floor

from .errors import InvalidInputError

# Published tables keyed (row, k); for KG(3, k) the row is the homology degree.
PUBLISHED_BIGDIM = {
    (3, 1): 7, (3, 2): 28, (3, 3): 84, (3, 4): 210, (3, 5): 462,
    (4, 1): 9, (4, 2): 45, (4, 3): 165, (4, 4): 495, (4, 5): 1287,
    (5, 1): 11, (5, 2): 66, (5, 3): 286, (5, 4): 1001, (5, 5): 3003,
    (6, 1): 13, (6, 2): 91, (6, 3): 455, (6, 4): 1820, (6, 5): 6188,
    (7, 1): 15, (7, 2): 120, (7, 3): 680, (7, 4): 3060, (7, 5): 11628,
    (8, 1): 17, (8, 2): 153, (8, 3): 969, (8, 4): 4845, (8, 5): 20349,
    (9, 1): 19, (9, 2): 190, (9, 3): 1330, (9, 4): 7315, (9, 5): 33649,
    (10, 1): 21, (10, 2): 231, (10, 3): 1771, (10, 4): 10626, (10, 5): 53130,
}

PUBLISHED_KG3 = {
    (6, 1): 29, (6, 2): 203, (6, 3): 812, (6, 4): 1972, (6, 5): 5626,
    (9, 1): 7, (9, 2): 28, (9, 3): 84, (9, 4): 210, (9, 5): 462,
}

PUBLISHED_CONNECTIVITY = {
    (4, 1): 11, (4, 2): 5, (4, 3): 3, (4, 4): 2, (4, 5): 1,
    (5, 1): 37, (5, 2): 17, (5, 3): 9, (5, 4): 6, (5, 5): 4,
    (6, 1): 121, (6, 2): 52, (6, 3): 28, (6, 4): 17, (6, 5): 11,
    (7, 1): 400, (7, 2): 157, (7, 3): 79, (7, 4): 46, (7, 5): 30,
    (8, 1): 1349, (8, 2): 484, (8, 3): 227, (8, 4): 125, (8, 5): 77,
    (9, 1): 4617, (9, 2): 1525, (9, 3): 666, (9, 4): 346, (9, 5): 202,
    (10, 1): 16031, (10, 2): 4897, (10, 3): 1998, (10, 4): 978, (10, 5): 542,
}

# base rank of H_6(VR(F_3^[7]; 4)), computed (and cached here) from KG(3, 1)
KG3_DEGREE6_BASE = 29


def top_degree(n: int) -> int:
    """``p = C(2n, n)/2 - 1``, the degree of the cross-polytopal classes."""
    return comb(2 * n, n) // 2 - 1


def bigdim_bound(n: int, k: int) -> int:
    """``C(2n+k, 2n)``: independent cross-polytopal classes in degree ``top_degree(n)``."""
    if n < 3:
        raise InvalidInputError("the cross-polytopal bound needs n >= 3")
    if k < 0:
        raise InvalidInputError("k must be >= 0")
    return comb(2 * n + k, 2 * n)


def smalldim_bound(ell: int, base_rank: int, m: int) -> int:
    """``base_rank · Σ_{i=ell}^{m} C(i-2, ell-2)``."""
    if ell < 2:
        raise InvalidInputError("ell must be >= 2")
    if base_rank < 1:
        raise InvalidInputError("base_rank must be >= 1")
    if m < ell:
        raise InvalidInputError(f"m={m} is smaller than ell={ell}")
    return base_rank * sum(comb(i - 2, ell - 2) for i in range(ell, m + 1))


def codim1_bound(ell: int, base_rank: int) -> int:
    if ell < 2 or base_rank < 1:
        raise InvalidInputError("need ell >= 2 and base_rank >= 1")
    return ell * base_rank


def connectivity_bound(n: int, k: int) -> tuple[Fraction, int]:
    """Degree bound on the total domination number, and the connectivity it implies."""
    if n < 2 or k < 0:
        raise InvalidInputError("need n >= 2 and k >= 0")
    gamma = Fraction(comb(2 * n + k, n), comb(n + k, n))
    alpha = gamma / 2
    if alpha.denominator == 1:
        conn = alpha.numerator - 2
    else:
        conn = alpha.numerator // alpha.denominator - 1
    return gamma, conn


def connectivity_rounded(n: int, k: int) -> int:
    """``round(α) - 2`` with halves rounded up; reproduces the published connectivity table.

    This is weaker than ``connectivity_bound`` by one whenever the
    fractional part of ``α`` is at least one half.
    """
    gamma, _ = connectivity_bound(n, k)
    alpha = gamma / 2
    return floor(alpha + Fraction(1, 2)) - 2


@dataclass
class BoundsReport:
    kind: str
    rows: list[int]
    cols: list[int]
    values: dict[tuple[int, int], int]
    published: dict[tuple[int, int], int] = field(default_factory=dict)
    row_label: str = "n"
    extra: dict = field(default_factory=dict)

    def discrepancies(self) -> list[tuple[int, int]]:
        return [key for key, v in self.values.items() if key in self.published and self.published[key] != v]

    def records(self) -> list[dict]:
        out = []
        for r in self.rows:
            for k in self.cols:
                rec = {self.row_label: r, "k": k, "value": self.values[(r, k)]}
                if (r, k) in self.published:
                    rec["published"] = self.published[(r, k)]
                    rec["published_discrepancy"] = self.published[(r, k)] != self.values[(r, k)]
                out.append(rec)
        return out

    def to_json(self) -> str:
        doc = {"kind": self.kind, "rows": self.rows, "cols": self.cols, "records": self.records(), **self.extra}
        return json.dumps(doc, indent=2, sort_keys=True) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow([f"{self.row_label}\\k"] + self.cols)
        for r in self.rows:
            w.writerow([r] + [self.values[(r, k)] for k in self.cols])
        return buf.getvalue()

    def to_text(self) -> str:
        width = max(len(str(v)) for v in self.values.values()) if self.values else 1
        width = max(width, 4)
        lines = [f"{self.row_label + chr(92) + 'k':>8} " + " ".join(f"{k:>{width}}" for k in self.cols)]
        for r in self.rows:
            cells = []
            for k in self.cols:
                v = self.values[(r, k)]
                flag = "*" if (r, k) in self.published and self.published[(r, k)] != v else " "
                cells.append(f"{v:>{width}}{flag}")
            lines.append(f"{r:>8} " + "".join(cells))
        if self.discrepancies():
            lines.append("* differs from the published value: " + ", ".join(
                f"({r},{k}) published {self.published[(r, k)]}" for r, k in self.discrepancies()))
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        return {"json": self.to_json, "csv": self.to_csv, "text": self.to_text}[fmt]()


def emit_table(kind: str, rows=None, cols=None, base_rank: int = KG3_DEGREE6_BASE) -> BoundsReport:
    """``bigdim`` (n × k), ``kg3`` (degree 6 and 9 rows for KG(3, k)), or ``connectivity``."""
    if kind == "bigdim":
        rows = list(rows or range(3, 11))
        cols = list(cols or range(1, 6))
        vals = {(n, k): bigdim_bound(n, k) for n in rows for k in cols}
        return BoundsReport(kind, rows, cols, vals, PUBLISHED_BIGDIM)
    if kind == "kg3":
        rows = list(rows or (6, 9))
        cols = list(cols or range(1, 6))
        vals = {}
        for d in rows:
            for k in cols:
                if d == 9:
                    vals[(d, k)] = bigdim_bound(3, k)
                elif d == 6:
                    vals[(d, k)] = smalldim_bound(7, base_rank, 6 + k)
                else:
                    raise InvalidInputError(f"no closed form for degree {d} of KG(3, k)")
        return BoundsReport(kind, rows, cols, vals, PUBLISHED_KG3, row_label="dim", extra={"base_rank": base_rank})
    if kind == "connectivity":
        rows = list(rows or range(4, 11))
        cols = list(cols or range(1, 6))
        vals = {}
        gammas = {}
        for n in rows:
            for k in cols:
                g, c = connectivity_bound(n, k)
                vals[(n, k)] = c
                gammas[f"{n},{k}"] = f"{g.numerator}/{g.denominator}"
        return BoundsReport(kind, rows, cols, vals, PUBLISHED_CONNECTIVITY, extra={"gamma_lower_bound": gammas})
    raise InvalidInputError(f"unknown table kind {kind!r}")
