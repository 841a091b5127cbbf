"""Verification report: one row per numbered check, a byte-stable machine
rendering, a human-readable table, and the summary figures.

The machine rendering carries no timestamps or timings so that a warm rerun
with the same configuration produces an identical file.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

STATUSES = ("pass", "fail", "skipped")

_TSV_COLUMNS = ("id", "group", "status", "expected", "observed", "provenance")


def _cell(text: str) -> str:
    # machine cells are tab-delimited single lines
    return str(text).replace("\t", " ").replace("\n", " ")


@dataclass
class CriterionResult:
    cid: str
    group: str
    title: str
    status: str
    expected: str
    observed: str
    provenance: str  # "frozen" | "table" | "derived"
    elapsed: float = 0.0

    def __post_init__(self):
        if self.status not in STATUSES:
            raise ValueError(f"unknown status {self.status!r}")

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class VerificationReport:
    results: list[CriterionResult] = field(default_factory=list)

    def add(self, result: CriterionResult) -> None:
        if any(r.cid == result.cid for r in self.results):
            raise ValueError(f"duplicate entry {result.cid}")
        self.results.append(result)

    def __iter__(self):
        return iter(sorted(self.results, key=lambda r: r.cid))

    def __len__(self):
        return len(self.results)

    def get(self, cid: str) -> CriterionResult:
        for r in self.results:
            if r.cid == cid:
                return r
        raise KeyError(cid)

    def tally(self) -> dict[str, int]:
        out = {s: 0 for s in STATUSES}
        for r in self.results:
            out[r.status] += 1
        return out

    @property
    def exit_code(self) -> int:
        return 1 if self.tally()["fail"] else 0

    @property
    def all_pass(self) -> bool:
        # skipped entries do not count as passes
        t = self.tally()
        return t["fail"] == 0 and t["pass"] == len(self.results)

    def machine_tsv(self) -> str:
        lines = ["\t".join(_TSV_COLUMNS)]
        for r in self:
            lines.append(
                "\t".join(
                    _cell(v)
                    for v in (r.cid, r.group, r.status, r.expected, r.observed, r.provenance)
                )
            )
        return "\n".join(lines) + "\n"

    def human_table(self) -> str:
        rows = [
            (r.cid, r.status.upper(), f"{r.elapsed:6.2f}s", r.group, r.title, r.observed)
            for r in self
        ]
        widths = [max(len(row[i]) for row in rows) for i in range(5)]
        lines = []
        for row in rows:
            head = "  ".join(row[i].ljust(widths[i]) for i in range(5))
            lines.append(f"{head}  {row[5]}")
        t = self.tally()
        lines.append(f"{t['pass']} passed, {t['fail']} failed, {t['skipped']} skipped")
        return "\n".join(lines)


# ---- figures ---------------------------------------------------------------


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def _figure_status(report: VerificationReport, path: Path) -> None:
    plt = _pyplot()
    colors = {"pass": "#2a9d4e", "fail": "#c03a2b", "skipped": "#9aa0a6"}
    rows = list(report)
    fig, ax = plt.subplots(figsize=(6, 0.35 * len(rows) + 1))
    ax.barh(
        range(len(rows)),
        [1] * len(rows),
        color=[colors[r.status] for r in rows],
        edgecolor="none",
    )
    ax.set_yticks(range(len(rows)))
    ax.set_yticklabels([f"{r.cid}  {r.group}" for r in rows], fontsize=8)
    ax.invert_yaxis()
    ax.set_xticks([])
    for spine in ax.spines.values():
        spine.set_visible(False)
    t = report.tally()
    ax.set_title(
        f"{t['pass']} passed / {t['fail']} failed / {t['skipped']} skipped", fontsize=10
    )
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _figure_weil(path: Path) -> None:
    from .newforms import load_newforms

    plt = _pyplot()
    forms = load_newforms()
    rec = forms["f120"]
    primes = rec.primes()
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot(primes, [2 * p ** 1.5 for p in primes], "-", color="#555", label="2 p^{3/2}")
    ax.plot(primes, [abs(rec.ap(p)) for p in primes], "o", ms=4, label="|a_p|, weight 4")
    ax.set_xlabel("p")
    ax.set_yscale("log")
    ax.legend(frameon=False)
    ax.set_title("weight-4 coefficients against the Weil envelope")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def _figure_polygons(path: Path, p: int = 13) -> None:
    from .lefschetz import hodge_polygon, newton_polygon, product_char_poly
    from .newforms import load_newforms

    plt = _pyplot()
    forms = load_newforms()
    pieces = [
        (1, forms["f120"].ap(p)),
        (5, p * forms["f120E"].ap(p)),
        (9, p * forms["f24B"].ap(p)),
    ]
    newton = newton_polygon(product_char_poly(p, pieces), p)
    hodge = hodge_polygon((1, 14, 14, 1))
    fig, ax = plt.subplots(figsize=(6, 4))
    ax.plot([x for x, _ in newton], [float(y) for _, y in newton], "o-", label=f"Newton at p={p}")
    ax.plot([x for x, _ in hodge], [float(y) for _, y in hodge], "s--", label="Hodge (1,14,14,1)")
    ax.set_xlabel("degree")
    ax.set_ylabel("valuation")
    ax.legend(frameon=False)
    ax.set_title("30-dimensional quotient motive: Newton above Hodge")
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def render_figures(report: VerificationReport, outdir: Path) -> list[Path]:
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    made = []
    for name, draw in (
        ("status.png", lambda path: _figure_status(report, path)),
        ("weil-envelope.png", _figure_weil),
        ("polygons.png", _figure_polygons),
    ):
        path = outdir / name
        draw(path)
        made.append(path)
    return made


def write_outputs(report: VerificationReport, outdir: Path, figures: bool = True) -> list[Path]:
    """Write report.tsv (machine), report.txt (human) and the figures."""
    outdir = Path(outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    tsv = outdir / "report.tsv"
    tsv.write_text(report.machine_tsv())
    txt = outdir / "report.txt"
    txt.write_text(report.human_table() + "\n")
    paths = [tsv, txt]
    if figures:
        paths.extend(render_figures(report, outdir / "figures"))
    return paths
