"""
Report builders shared by the command line and the HTTP surface, plus rendering.
"""
import csv
import io
import logging
from typing import List, Sequence, Union

from . import localization, schubert
from .exceptions import ContractViolationError
from .instanton import QuinticReport, quintic_table
from .mirror import i_function, normalize, verify_mirror_identity
from .schemas import (
    Command,
    EmbeddingModel,
    GeometrySpec,
    JFunctionReport,
    OracleReport,
    OutputFormat,
    RunConfig,
    SelfTestReport,
    SeriesEntry,
    VerificationReport,
)
from .selftest import run_selftest

logger = logging.getLogger(__name__)

Report = Union[OracleReport, QuinticReport, VerificationReport, JFunctionReport, SelfTestReport]


# --- Builders ---
def lines_report(l: int, n: int, seed: int, trials: int = 3) -> OracleReport:
    """Schubert count, cross-checked by the degree-1 graph sum."""
    value = schubert.lines_on_hypersurface(l, n)
    inputs = {"degree": l, "ambient": n}
    if not schubert.lines_dimension_matches(l, n):
        return OracleReport(
            inputs=inputs,
            value=value,
            method="schubert",
            note=f"c_{l + 1}(Sym^{l} S*) does not match dim G(2,{n + 1}) = {2 * (n - 1)}",
        )
    localized = localization.localize(n, [l], 1, seed=seed, trials=trials)
    if localized.value != value:
        logger.error(f"Schubert count {value} != localized {localized.value} for l={l}, n={n}")
        raise ContractViolationError(
            f"oracles disagree on lines of a degree {l} hypersurface in P^{n}: {value} vs {localized.value}"
        )
    return OracleReport(
        inputs=inputs,
        value=value,
        method="schubert+localization",
        weight_trials=[list(w.values) for w in localized.weight_trials],
    )


def localize_report(n: int, l_list: Sequence[int], d: int, seed: int, trials: int = 3) -> OracleReport:
    result = localization.localize(n, l_list, d, seed=seed, trials=trials)
    return OracleReport(
        inputs={"ambient": n, "degrees": list(l_list), "curve_degree": d, "seed": seed},
        value=result.value,
        method="localization",
        weight_trials=[list(w.values) for w in result.weight_trials],
        note=result.note,
    )


def quintic_report(order: int) -> QuinticReport:
    table, je_invariants = quintic_table(order)
    report = QuinticReport(order=order, table=table, je_invariants=je_invariants)
    if not report.routes_agree:
        logger.error(f"Yukawa and J_E routes disagree: {table.K} vs {je_invariants}")
    return report


def verify_report(model_name: str, order: int) -> VerificationReport:
    return verify_mirror_identity(EmbeddingModel.from_name(model_name), order)


def jfun_report(n: int, l_list: Sequence[int], order: int) -> JFunctionReport:
    spec = GeometrySpec(ambient_dim=n, bundle_degrees=list(l_list), trunc_order=order)
    norm = normalize(i_function(spec), spec)
    entries = [
        SeriesEntry(d=d, hbar_exp=k, h_power=p, value=v) for d, k, p, v in norm.je.payload.entries()
    ]
    return JFunctionReport(
        geometry=spec,
        order=order,
        form=norm.je.form_tag.value,
        mirror_map=list(norm.mirror_map_f.coeffs),
        entries=entries,
    )


def execute(config: RunConfig) -> Report:
    command = config.command
    if command == Command.LINES:
        return lines_report(config.bundle_degrees[0], config.ambient_dim, config.seed, config.trials)
    if command == Command.LOCALIZE:
        return localize_report(
            config.ambient_dim, config.bundle_degrees, config.curve_degree, config.seed, config.trials
        )
    if command == Command.QUINTIC:
        return quintic_report(config.trunc_order)
    if command == Command.VERIFY_EMBEDDING:
        return verify_report(config.model, config.trunc_order)
    if command == Command.JFUN:
        return jfun_report(config.ambient_dim, config.bundle_degrees, config.trunc_order)
    return run_selftest(config.seed)


def report_ok(report: Report) -> bool:
    if isinstance(report, (VerificationReport, QuinticReport)):
        return report.status == "verified"
    if isinstance(report, SelfTestReport):
        return report.status == "passed"
    return True


# --- Rendering ---
def _rows(report: Report) -> List[List[str]]:
    if isinstance(report, QuinticReport):
        rows = [["d", "n_d", "K_d"]]
        rows += [[str(d), str(n_d), str(k_d)] for d, n_d, k_d in report.table.rows()]
        return rows
    if isinstance(report, VerificationReport):
        rows = [["d", "hbar_exp", "h_power", "lhs", "rhs"]]
        rows += [[str(m.d), str(m.hbar_exp), str(m.h_power), str(m.lhs), str(m.rhs)] for m in report.mismatches]
        return rows
    if isinstance(report, JFunctionReport):
        rows = [["d", "hbar_exp", "h_power", "value"]]
        rows += [[str(e.d), str(e.hbar_exp), str(e.h_power), str(e.value)] for e in report.entries]
        return rows
    if isinstance(report, SelfTestReport):
        rows = [["name", "passed", "cases", "detail"]]
        rows += [[c.name, str(c.passed).lower(), str(c.cases), c.detail or ""] for c in report.checks]
        return rows
    return [["method", "value"], [report.method, str(report.value)]]


def _text(report: Report) -> str:
    if isinstance(report, OracleReport):
        lines = [str(report.value)]
        if report.note:
            lines.append(f"note: {report.note}")
        return "\n".join(lines)
    if isinstance(report, QuinticReport):
        body = "\n".join(f"{d:>3}  {str(n_d):>24}  {str(k_d):>28}" for d, n_d, k_d in report.table.rows())
        return f"{'d':>3}  {'n_d':>24}  {'K_d':>28}\n{body}\nstatus: {report.status}"
    if isinstance(report, VerificationReport):
        lines = [f"{report.model} (order {report.order}): {report.status}, {report.checked} coefficients checked"]
        first = report.first_discrepancy
        if first is not None:
            lines.append(
                f"first discrepancy at q^{first.d} hbar^{first.hbar_exp} H^{first.h_power}: {first.lhs} != {first.rhs}"
            )
        return "\n".join(lines)
    if isinstance(report, JFunctionReport):
        header = f"J_E for {report.geometry.label} to order {report.order}"
        return "\n".join([header] + [f"{e.d} {e.hbar_exp} {e.h_power} {e.value}" for e in report.entries])
    lines = [f"{'PASS' if c.passed else 'FAIL'}  {c.name} ({c.cases} cases)" for c in report.checks]
    lines.append(f"selftest {report.status}")
    return "\n".join(lines)


def render(report: Report, output_format: OutputFormat) -> str:
    if output_format == OutputFormat.JSON:
        return report.model_dump_json(indent=2)
    if output_format == OutputFormat.CSV:
        buffer = io.StringIO()
        csv.writer(buffer, lineterminator="\n").writerows(_rows(report))
        return buffer.getvalue().rstrip("\n")
    return _text(report)
