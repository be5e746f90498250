"""Benchmark tables: the published grids, their printed values and a runner."""
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .baselines import midpoint_rule, peirce_rule
from .cubature import CubatureParams, polyharmonic_cubature
from .exceptions import DomainError
from .reference import FUNCTIONS, WEIGHTS, f2_w2_true_value, true_value
from .weights import builtin_weight

POLY_N = (10, 15, 25, 35, 50)
POLY_M = (9, 25, 63, 83)
MID_NM = (5, 10, 20, 100, 200)


def _rows(*rows):
    return [[float(v) for v in row.split()] for row in rows]


def _const_rows(*vals):
    return [[float(v)] * 4 for v in vals]


@dataclass
class TableSpec:
    """One benchmark table.

    ``rule`` is poly, midpoint or peirce.  Square tables (midpoint with
    N = M) list their sizes in ``Ns`` and leave ``Ms`` empty.
    """

    key: str
    f: str
    w: str
    rule: str
    Ns: tuple
    Ms: tuple
    printed: list
    K: int = 1
    alpha: float = 0.0
    reference: float = None
    reference_note: str = ""

    @property
    def square(self):
        return not self.Ms

    def cells(self):
        if self.square:
            return [(n, n) for n in self.Ns]
        return [(n, m) for n in self.Ns for m in self.Ms]

    def printed_value(self, N, M):
        if self.square:
            return self.printed[self.Ns.index(N)][0]
        return self.printed[self.Ns.index(N)][self.Ms.index(M)]

    def true(self):
        return self.reference if self.reference is not None else true_value(self.f, self.w)


TABLES = {
    "1": TableSpec("1", "f1", "w1", "poly", POLY_N, POLY_M, _const_rows(
        "6.87224296287783", "6.87223588060173", "6.87223420205342", "6.87223400297000", "6.87223394775545")),
    "2": TableSpec("2", "f2", "w1", "poly", POLY_N, POLY_M, _rows(
        "-0.08102057453745 0.31409913156633 0.30131093100867 0.30131093100867",
        "-0.08102397430499 0.31409919589293 0.30131099533522 0.30131099533522",
        "-0.08102401217317 0.31409919589293 0.30131099533522 0.30131099533522",
        "-0.08102401237119 0.31409919589293 0.30131099533522 0.30131099533522",
        "-0.08102401237809 0.31409919589293 0.30131099533522 0.30131099533522")),
    "3": TableSpec("3", "f3", "w1", "poly", POLY_N, POLY_M, _const_rows(
        "1.79513323182095", "1.79518029482336", "1.79519315318245", "1.79519497859942", "1.79519556405565")),
    "4": TableSpec("4", "f0", "w1", "midpoint", MID_NM, (), _rows(
        "6.29394814952597", "6.55266428574299", "6.65272561900472", "6.73395357471790", "6.74418070869065")),
    "5": TableSpec("5", "f1", "w1", "midpoint", MID_NM, (), _rows(
        "6.47918572036913", "6.67145580085980", "6.77078085601381", "6.85177311709146", "6.86199288760082")),
    "6": TableSpec("6", "f2", "w1", "midpoint", POLY_N, POLY_M, _rows(
        "-0.190440454101284 0.0936727156130806 0.105393884431863 0.105393884431863",
        "-0.120671303989885 0.154856209500921 0.167165382069484 0.167165382069483",
        "-0.0641280979279670 0.207320729809817 0.219935669864855 0.219935669864855",
        "-0.0400423613447862 0.230317338211144 0.243017030992702 0.243017030992701",
        "-0.0220967384451548 0.247690217929060 0.260435021528943 0.260435021528943")),
    "7": TableSpec("7", "f3", "w1", "midpoint", MID_NM, (), _rows(
        "1.790188901210552", "1.793908488488327", "1.794870559302513", "1.795182719690259", "1.795192530240442")),
    "8": TableSpec("8", "f0", "w1", "peirce", POLY_N, POLY_M, _const_rows(
        "6.49387212", "6.577936813", "6.647152541", "6.677370918", "6.700258414")),
    "9": TableSpec("9", "f4", "w2", "poly", POLY_N, POLY_M, _rows(
        "0.5609353695139790 0.6153846153846160 0.6153846153846160 0.6153846153846160",
        "0.5609353656165750 0.6153846153846150 0.6153846153846150 0.6153846153846150",
        "0.5609353655541600 0.6153846153846170 0.6153846153846170 0.6153846153846170",
        "0.5609353655539850 0.6153846153846130 0.6153846153846140 0.6153846153846140",
        "0.5609353655539860 0.6153846153846170 0.6153846153846170 0.6153846153846170"), K=12),
    "10": TableSpec("10", "f5", "w2", "poly", POLY_N, POLY_M, _rows(
        "0.785206660 0.785352337 0.785367124 0.785369362",
        "0.785208297 0.785358970 0.785373081 0.785375274",
        "0.785208235 0.785361119 0.785374994 0.785377171",
        "0.785208149 0.785361440 0.785375276 0.785377452",
        "0.785208109 0.785361541 0.785375364 0.785377539"), K=22),
    "11": TableSpec("11", "f2", "w2", "poly", POLY_N, POLY_M, _rows(
        "0.096718846427391 0.014472433304185 0.014477271351135 0.014477271351135",
        "0.096642162991824 0.014472441635349 0.014477279682299 0.014477279682299",
        "0.096593708566055 0.014472441635349 0.014477279682299 0.014477279682299",
        "0.096592741482745 0.014472441635350 0.014477279682299 0.014477279682299",
        "0.096597855764522 0.014472441635349 0.014477279682299 0.014477279682299"), K=22,
        reference=f2_w2_true_value(K=22), reference_note="integral against |y| truncated at K=22"),
    "mid-w2": TableSpec("mid-w2", "f4", "w2", "midpoint", (5, 10, 20, 40, 100, 200, 500), (), _rows(
        "0.173359053300102", "0.795909972453979", "0.640355591783074", "0.620920690132442",
        "0.616243873682115", "0.615598519244782", "0.61541879944866")),
}


def compute_cell(spec, N, M, K=None):
    """Value of one table cell; ``K`` overrides the table's truncation."""
    f = FUNCTIONS[spec.f]
    if spec.rule == "poly":
        w = builtin_weight(spec.w, k_max=spec.K if K is None else K)
        return polyharmonic_cubature(f, w, CubatureParams(N, M, spec.K if K is None else K))
    wfun = WEIGHTS[spec.w]
    g = lambda x, y: f(x, y) * wfun(x, y)
    if spec.rule == "midpoint":
        return midpoint_rule(g, N, M)
    if spec.rule == "peirce":
        return peirce_rule(g, N, M, alpha=spec.alpha)
    raise DomainError(f"unknown rule {spec.rule!r}")


@dataclass
class TableResult:
    spec: TableSpec
    values: dict = field(default_factory=dict)

    def error(self, N, M):
        return abs(self.values[(N, M)] - self.spec.true())


def get_table(key):
    key = str(key)
    if key not in TABLES:
        raise DomainError(f"unknown table {key!r}; choose from {', '.join(TABLES)}")
    return TABLES[key]


def run_table(key, K=None, jobs=4):
    """Compute every cell; cells run in a thread pool but results are stored in grid order."""
    spec = get_table(key)
    cells = spec.cells()
    with ThreadPoolExecutor(max_workers=max(1, jobs)) as pool:
        vals = list(pool.map(lambda c: compute_cell(spec, c[0], c[1], K), cells))
    return TableResult(spec, dict(zip(cells, vals)))


def format_table(result, fmt="md"):
    """Render value and error grids with 14 decimals as Markdown or CSV."""
    spec = result.spec
    if fmt not in ("md", "csv"):
        raise DomainError(f"unknown format {fmt!r}")
    if fmt == "csv":
        lines = ["N,M,value,error,printed"]
        for N, M in spec.cells():
            lines.append(f"{N},{M},{result.values[(N, M)]:.14f},{result.error(N, M):.14f},"
                         f"{spec.printed_value(N, M)!r}")
        return "\n".join(lines) + "\n"
    title = f"Table {spec.key}: {spec.rule} rule, {spec.f} with {spec.w}"
    if spec.rule == "poly":
        title += f", K={spec.K}"
    ref = f"reference value {spec.true():.16g}"
    if spec.reference_note:
        ref += f" ({spec.reference_note})"
    out = [f"### {title}", "", ref, ""]
    if spec.square:
        out += ["| N=M | value | error |", "|---|---|---|"]
        for N, M in spec.cells():
            out.append(f"| {N} | {result.values[(N, M)]:.14f} | {result.error(N, M):.14f} |")
        return "\n".join(out) + "\n"
    for label, getter in (("value", lambda n, m: result.values[(n, m)]), ("error", result.error)):
        out += [f"{label}:", "", "| N\\M | " + " | ".join(str(m) for m in spec.Ms) + " |",
                "|---" * (len(spec.Ms) + 1) + "|"]
        for n in spec.Ns:
            out.append(f"| {n} | " + " | ".join(f"{getter(n, m):.14f}" for m in spec.Ms) + " |")
        out.append("")
    return "\n".join(out)
