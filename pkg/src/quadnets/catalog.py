"""The extremal nets, their expected invariants, and the end-to-end verification pipeline."""

from __future__ import annotations

import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .baselocus import (
    IncompleteBaseLocus,
    find_rational_basepoints,
    label_chains,
    nondegeneracy_check,
)
from .exact.fields import GF, QQ
from .exact.smith import AbelianGroup
from .lattice import build_config_graph, mw_group_from_config, parse_class, verify_fiber_sums
from .mordell import enumerate_rank2, mordell_weil_rank
from .parsing import PolynomialSyntaxError
from .quadric import DegenerateNetError, Net, QuadraticForm, assumption1_check
from .quartic import (
    IncompleteSingularities,
    PlaneQuartic,
    discriminant_quartic,
    quartic_root_system,
)
from .roots import affine_extensions, format_types, parse_types, quotient_group, subsystem

IDENTITY = ((1, 0, 0), (0, 1, 0), (0, 0, 1))


@dataclass(frozen=True)
class CatalogEntry:
    """One extremal net with everything the classification predicts about it.

    ``label`` names the configuration graph the forms are bound to;
    ``printed_label`` is the label the forms carry in the table of standard
    forms, which differs for the two ``{3,3,2}`` nets.  ``quartic_change`` is
    the linear substitution of ``(a, b, c)`` that aligns the computed
    discriminant with the tabulated quartic.
    """

    label: str
    forms: tuple
    net_type: tuple
    root_lattice: str
    mw_group: str
    nodes: tuple
    quartic: str | None
    field: str = "Q"
    printed_label: str | None = None
    quartic_change: tuple = IDENTITY

    @property
    def pretty_label(self):
        body, _, variant = self.label.partition("_")
        return body + variant.translate(str.maketrans("0123456789", "₀₁₂₃₄₅₆₇₈₉"))

    @property
    def gf2_only(self):
        return self.field == "GF(2)"

    @property
    def config_type(self):
        return format_types(tuple(t.__class__(t.family, t.rank, True) for t in parse_types(self.root_lattice)))

    @property
    def key(self):
        return normalise_label(self.label)


_ENTRIES = (
    CatalogEntry(
        "{8}_1", ("Z^2", "X*(Y+W) + Y*W", "X*Z + (Y+W)^2"), (8,), "E7", "0",
        ("e12", "e23", "e34", "e45", "e56", "e67", "e78", "h1234"),
        "b*(4*a*b^2 + b*c^2 + 4*c^3)",
    ),
    CatalogEntry(
        "{8}_2", ("Y*Z + W^2", "X*Z + Y*W", "X*W - Y^2 + Z^2"), (8,), "A7", "Z/2",
        ("e12", "e23", "e34", "e45", "e56", "e67", "e78", "c1"),
        "b^4 + 2*a*b^2*c + a^2*c^2 + 4*c^4",
    ),
    CatalogEntry(
        "{4,4}_1", ("Z*W", "X*Z + Y*W", "X*Y + Z^2 + W^2"), (4, 4), "A7", "Z/2",
        ("e12", "e23", "e34", "h1235", "e56", "e67", "e78", "h1567"),
        "(b^2 - a*c + 2*c^2)*(b^2 - a*c - 2*c^2)",
    ),
    CatalogEntry(
        "{6,2}", ("Y*Z", "X*Z + W^2", "X*Y + Z^2"), (6, 2), "D6+A1", "Z/2",
        ("h1278", "e23", "e12", "e34", "h1234", "e45", "e56", "e78", "c7"),
        "b*c*(a*b - c^2)",
    ),
    CatalogEntry(
        "{4,4}_2", ("X*Y", "Z^2", "(X+Y)*Z + W^2"), (4, 4), "D6+A1", "Z/2",
        ("e34", "e23", "e12", "h1256", "e78", "e67", "e56", "h1234", "h5678"),
        "a*c*(a*b - c^2)",
    ),
    CatalogEntry(
        "{5,3}", ("Y*Z", "X*W + Z^2", "X*Y + W^2"), (5, 3), "A5+A2", "Z/3",
        ("h1678", "e12", "e23", "e34", "e45", "h1234", "e67", "e78", "c6"),
        "b*(a^2*b - 4*c^3)",
    ),
    CatalogEntry(
        "{3,3,2}_1", ("X*Y", "Z*W", "(X+Y)*Z + W^2"), (3, 3, 2), "A5+A2", "Z/3",
        ("h1478", "e12", "e23", "h1245", "e56", "e45", "e78", "h1237", "h4567"),
        "a*(a*b^2 - 4*c^3)",
        printed_label="{3,3,2}_2",
        quartic_change=((1, 0, 0), (0, 1, 0), (0, 0, -1)),
    ),
    CatalogEntry(
        "{4,2,2}", ("X*(Y+Z)", "Y*Z", "(X+Y)*Z + W^2"), (4, 2, 2), "D4+3A1", "(Z/2)^2",
        ("e12", "h1278", "h1256", "e23", "e34", "h1234", "h5678", "e56", "c5", "e78", "c7"),
        "a*b*c*(a + b)",
        quartic_change=((1, 0, 0), (0, -1, 1), (0, 1, 0)),
    ),
    CatalogEntry(
        "{4,4}_3", ("X*Y", "X*Z + W^2", "Y*W + Z^2"), (4, 4), "2A3+A1", "Z/4",
        ("e12", "e23", "e56", "e67", "h1234", "c1", "e34", "c5", "e78", "h5678"),
        "b*c*(a^2 - b*c)",
        quartic_change=((Fraction(1, 2), 0, 0), (0, 1, 0), (0, 0, 1)),
    ),
    CatalogEntry(
        "{3,3,2}_2", ("Y*Z", "X*(Z+W)", "X*Y + W^2"), (3, 3, 2), "2A3+A1", "Z/4",
        ("e12", "e23", "e45", "e56", "e78", "h1456", "h1278", "h1234", "h4578", "c7"),
        "a*b*(a*b + 4*c^2)",
        printed_label="{3,3,2}_1",
    ),
    CatalogEntry(
        "{2,2,2,2}", ("X*Y", "Z*W", "(X+Y)*(Z+W)"), (2, 2, 2, 2), "2A3+A1", "Z/4",
        ("e12", "h1356", "e56", "h1257", "h5678", "h1378", "e34", "h3457", "e78", "h1234"),
        "a*b*(a*b - 4*c^2)",
    ),
    CatalogEntry(
        "{1,1,1,1,1,1,1,1}", ("(X+Y+Z)*W", "(X+Y+W)*Z", "(X+Z+W)*Y"), (1,) * 8, "7A1", "(Z/2)^3",
        ("h1234", "h5678", "h1256", "h3478", "h1278", "h3456", "h1357",
         "h2468", "h1368", "h2457", "h1458", "h2367", "h1467", "h2358"),
        None,
        field="GF(2)",
    ),
)


def load_catalog():
    return list(_ENTRIES)


_SUB = str.maketrans("₀₁₂₃₄₅₆₇₈₉", "0123456789")


def normalise_label(text: str) -> str:
    """``"{8}₂"``, ``"{8}2"``, ``"{8}_2"`` and ``"8_2"`` all become ``"8/2"``."""
    t = text.translate(_SUB).replace(" ", "")
    if t.startswith("{") and "}" in t:
        body, _, variant = t[1:].partition("}")
    else:
        body, _, variant = t.partition("_")
    variant = variant.lstrip("_")
    return body + (f"/{variant}" if variant else "")


def find_entry(label: str) -> CatalogEntry:
    key = normalise_label(label)
    for e in _ENTRIES:
        if e.key == key:
            return e
    raise KeyError(f"no catalog entry {label!r}; known: {', '.join(e.label for e in _ENTRIES)}")


# ---------------------------------------------------------------------------
# reports


PASS, FAIL, SKIP, ERROR = "pass", "fail", "skip", "error"


@dataclass
class Check:
    status: str
    expected: str = ""
    actual: str = ""
    detail: str = ""

    def to_dict(self):
        return {"status": self.status, "expected": self.expected, "actual": self.actual, "detail": self.detail}


@dataclass
class VerificationReport:
    label: str
    field: str
    checks: dict = dc_field(default_factory=dict)
    values: dict = dc_field(default_factory=dict)
    seconds: float = 0.0

    @property
    def green(self):
        return bool(self.checks) and all(c.status in (PASS, SKIP) for c in self.checks.values())

    @property
    def skipped(self):
        """True when the entry as a whole was not applicable (wrong characteristic or bad reduction)."""
        return bool(self.checks) and all(c.status == SKIP for c in self.checks.values()) or (
            self.checks.get("reduction", Check(PASS)).status == SKIP
        )

    @property
    def status(self):
        return "SKIP" if self.skipped else ("GREEN" if self.green else "RED")

    def failures(self):
        return {k: c for k, c in self.checks.items() if c.status in (FAIL, ERROR)}

    def to_dict(self):
        return {
            "label": self.label,
            "field": self.field,
            "green": self.green,
            "status": self.status,
            "seconds": self.seconds,
            "values": dict(self.values),
            "checks": {k: c.to_dict() for k, c in self.checks.items()},
        }

    @classmethod
    def from_dict(cls, d):
        rep = cls(d["label"], d["field"], seconds=d["seconds"], values=dict(d["values"]))
        rep.checks = {k: Check(**c) for k, c in d["checks"].items()}
        return rep

    def to_json(self):
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, ensure_ascii=False)

    def to_text(self):
        lines = [f"{self.label} over {self.field}: {self.status} ({self.seconds:.2f}s)"]
        for name, c in self.checks.items():
            line = f"  {c.status.upper():5} {name}"
            if c.actual or c.expected:
                line += f": {c.actual}" + (f" (expected {c.expected})" if c.expected and c.expected != c.actual else "")
            if c.detail:
                line += f" [{c.detail}]"
            lines.append(line)
        return "\n".join(lines)


def _compare(report, name, expected, actual, detail=""):
    report.checks[name] = Check(PASS if expected == actual else FAIL, str(expected), str(actual), detail)


def _stage(report, name, fn):
    """Run one pipeline stage; any exception becomes an error check instead of propagating."""
    try:
        return fn()
    except Exception as exc:  # noqa: BLE001 - the report must capture every failure
        report.checks[name] = Check(ERROR, detail=f"{type(exc).__name__}: {exc}")
        return None


def _field_for(entry: CatalogEntry, prime):
    if prime is not None:
        return GF(prime)
    return GF(2) if entry.gf2_only else QQ


def _bad_reduction(entry: CatalogEntry, F):
    """Why reduction mod p is degenerate for this entry, or ``None``."""
    try:
        q_net = Net.parse(entry.forms, QQ)
        Net([f.to_field(F) for f in q_net.forms], F)
    except DegenerateNetError:
        return "forms become dependent"
    except ZeroDivisionError:
        return "coefficients not p-integral"
    q_points = find_rational_basepoints(q_net).points
    reduced = set()
    for p in q_points:
        try:
            from .quadric import ProjPoint

            reduced.add(ProjPoint([F(c) for c in p.coords], F))
        except (ZeroDivisionError, ValueError):
            return "basepoint coordinates not p-integral"
    if len(reduced) < len(q_points):
        return "basepoints collide"
    if F.characteristic != 2:
        try:
            discriminant_quartic(Net.parse(entry.forms, F))
        except DegenerateNetError:
            return "discriminant vanishes identically"
    return None


def verify_entry(entry: CatalogEntry, prime: int | None = None) -> VerificationReport:
    """Run the whole pipeline on one entry; stage failures are recorded, never raised."""
    start = time.perf_counter()
    F = _field_for(entry, prime)
    report = VerificationReport(entry.label, str(F))
    if entry.gf2_only and F.characteristic != 2:
        report.checks["applicable"] = Check(SKIP, detail="this net exists only in characteristic 2")
        report.seconds = round(time.perf_counter() - start, 3)
        return report
    if prime is not None and not entry.gf2_only:
        reason = _stage(report, "reduction", lambda: _bad_reduction(entry, F))
        if reason:
            report.checks["reduction"] = Check(SKIP, detail=f"bad reduction mod {prime}: {reason}")
            report.seconds = round(time.perf_counter() - start, 3)
            return report
        if "reduction" not in report.checks:
            report.checks["reduction"] = Check(PASS, detail=f"good reduction mod {prime}")

    net = _stage(report, "parse", lambda: Net.parse(entry.forms, F))
    if net is None:
        report.seconds = round(time.perf_counter() - start, 3)
        return report
    report.checks["parse"] = Check(PASS, actual=str(net))

    locus = _stage(report, "basepoints", lambda: find_rational_basepoints(net))
    if locus is not None:
        report.values["basepoints"] = [str(p) for p in locus.points]
        a1 = assumption1_check(net, locus.points)
        report.checks["assumption1"] = Check(PASS if a1 else FAIL, detail=a1.message)
        nd = nondegeneracy_check(locus.points)
        report.checks["nondegeneracy"] = Check(PASS if nd else FAIL, detail=nd.message)
        chains = label_chains(locus.points, locus.multiplicities)
        actual_type = tuple(c.multiplicity for c in chains)
        if locus.certified:
            _compare(report, "type", _type_str(entry.net_type), _type_str(actual_type))
        else:
            detail = str(IncompleteBaseLocus(locus.points, 8 - locus.total))
            report.checks["type"] = Check(FAIL, _type_str(entry.net_type), _type_str(actual_type), detail)
        report.values["type"] = _type_str(actual_type)

        rank2 = _stage(report, "rank2", lambda: enumerate_rank2(net, locus.points))
        rr = _stage(report, "rank", lambda: mordell_weil_rank(net, locus, rank2)) if rank2 else None
        if rr is not None:
            report.values.update(n=rr.n, d=rr.d, rho=rr.rho, A=rr.A, B=rr.B, C=rr.C, D=rr.D, h0=rr.h0)
            report.values["rank2_members"] = [m.describe() for m in rank2.members]
            report.checks["rank2_certified"] = Check(
                PASS if rank2.certified else FAIL, detail="; ".join((rank2.method,) + tuple(rank2.unresolved))
            )
            _compare(report, "d_count", rr.n - 1, rr.d, "extremal nets have d = n - 1")
            _compare(report, "rho", 0, rr.rho)
            _compare(report, "rho_two_routes", rr.rho, rr.rho_from_members)

    # configuration graph from the expected node classes
    from .lattice import chains_from_type

    graph = _stage(
        report,
        "config_graph",
        lambda: build_config_graph(
            [(lbl, parse_class(lbl, chains_from_type(entry.net_type))) for lbl in entry.nodes]
        ),
    )
    if graph is not None:
        _compare(report, "config_graph", entry.config_type, graph.type_string())
        report.values["config_type"] = graph.type_string()
        sums = _stage(report, "fiber_sums", lambda: verify_fiber_sums(graph))
        if sums is not None:
            bad = [s for s in sums if not s.passed]
            report.checks["fiber_sums"] = Check(
                PASS if not bad else FAIL, detail="; ".join(f"{s.component}: {s.message}" for s in bad)
            )
        if "h0" in report.values:
            _compare(report, "h0", len(graph.components), report.values["h0"], "A+B+C+D against graph components")
        mw = _stage(report, "mw_config", lambda: mw_group_from_config([c for c in graph.classes]))
        if mw is not None:
            _compare(report, "mw_config", entry.mw_group, str(mw))
            report.values["mw_config"] = str(mw)
    mw_sub = _stage(report, "mw_subsystem", lambda: quotient_group(subsystem(entry.root_lattice)))
    if mw_sub is not None:
        _compare(report, "mw_subsystem", entry.mw_group, str(mw_sub))
        report.values["mw_subsystem"] = str(mw_sub)
    ext = affine_extensions(parse_types(entry.root_lattice))
    report.checks["affine_extension"] = Check(
        PASS if parse_types(entry.config_type) in ext else FAIL,
        entry.config_type,
        ", ".join(format_types(e) for e in ext),
    )

    # discriminant quartic
    if entry.quartic is None or F.characteristic == 2:
        report.checks["discriminant"] = Check(SKIP, detail="no discriminant quartic in characteristic 2")
    else:
        disc = _stage(report, "discriminant", lambda: discriminant_quartic(net))
        if disc is not None:
            report.values["discriminant"] = str(disc)
            table = PlaneQuartic.parse(entry.quartic, F)
            aligned = disc.substitute_linear(entry.quartic_change)
            report.checks["discriminant"] = Check(
                PASS if aligned.proportional_to(table) else FAIL, entry.quartic, str(aligned), "up to a nonzero scalar"
            )
            if prime is None:
                rs = _stage(report, "singularities", lambda: quartic_root_system(disc))
                if rs is not None:
                    _compare(report, "singularities", format_types(parse_types(entry.root_lattice)), str(rs))
                    report.values["singularities"] = [str(r) for r in rs.records]
            else:
                report.checks["singularities"] = Check(SKIP, detail="ADE recognition is run over QQ only")
    if entry.printed_label:
        report.values["label_convention"] = (
            f"forms printed under {entry.printed_label} in the table of standard forms; "
            f"computed invariants bind them to the {entry.label} configuration"
        )
    report.seconds = round(time.perf_counter() - start, 3)
    return report


def _type_str(mults):
    return "{" + ",".join(str(m) for m in mults) + "}"


@dataclass(frozen=True)
class RouteCheck:
    label: str
    config: str
    subsystem: str
    table: str

    @property
    def passed(self):
        return self.config == self.subsystem == self.table


def cross_check_routes(entry: CatalogEntry) -> RouteCheck:
    """MW group from the configuration classes, from the abstract subsystem, and as tabulated."""
    from .lattice import chains_from_type

    chains = chains_from_type(entry.net_type)
    config = mw_group_from_config([parse_class(lbl, chains) for lbl in entry.nodes])
    sub = quotient_group(subsystem(entry.root_lattice))
    table = AbelianGroup.parse(entry.mw_group)
    return RouteCheck(entry.label, str(config), str(sub), str(table))


def bind_form_triple(forms, candidates, field=QQ):
    """The candidate entries whose configuration matches invariants computed from ``forms``.

    The number of graph components must equal ``h0 = A+B+C+D`` and, away from
    characteristic 2, the discriminant's root system must equal the entry's
    root lattice.
    """
    net = Net.parse(forms, field)
    rr = mordell_weil_rank(net)
    rs = None if field.characteristic == 2 else quartic_root_system(discriminant_quartic(net))
    out = []
    for e in candidates:
        comps = len(build_config_graph(
            [(lbl, parse_class(lbl, _chains_for(e))) for lbl in e.nodes]
        ).components)
        if comps != rr.h0:
            continue
        if rs is not None and rs.types != parse_types(e.root_lattice):
            continue
        out.append(e)
    return out


def _chains_for(entry):
    from .lattice import chains_from_type

    return chains_from_type(entry.net_type)


def verify_catalog(entries=None, prime=None, jobs=1):
    """Verify entries (concurrently when ``jobs > 1``); reports come back in catalog order."""
    entries = list(entries or load_catalog())
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            reports = list(pool.map(verify_entry, entries, [prime] * len(entries)))
    else:
        reports = [verify_entry(e, prime) for e in entries]
    order = {e.label: i for i, e in enumerate(load_catalog())}
    return sorted(reports, key=lambda r: order.get(r.label, len(order)))


def catalog_summary(reports):
    lines = []
    for r in reports:
        v = r.values
        lines.append(
            f"{r.status:5} {r.label:20} {r.field:6} "
            f"type={v.get('type', '?'):12} d={v.get('d', '?')} rho={v.get('rho', '?')} "
            f"graph={v.get('config_type', '?'):10} MW={v.get('mw_config', '?')}"
        )
    ran = [r for r in reports if not r.skipped]
    green = sum(r.green for r in ran)
    tail = f", {len(reports) - len(ran)} skipped" if len(ran) < len(reports) else ""
    lines.append(f"{green}/{len(ran)} green{tail}")
    return "\n".join(lines)


def reports_to_json(reports):
    return json.dumps([r.to_dict() for r in reports], indent=2, sort_keys=True, ensure_ascii=False)


def reports_from_json(text):
    return [VerificationReport.from_dict(d) for d in json.loads(text)]


# ---------------------------------------------------------------------------
# analysis of an arbitrary net


class IncompleteAnalysis(ValueError):
    pass


def analyze_net(net: Net) -> dict:
    """Type, n, d, rho and the singular-member counts, plus the discriminant data when available.

    Raises :class:`DegenerateNetError` subclasses for degenerate input and
    :class:`IncompleteAnalysis` when the field cannot certify the counts.
    """
    F = net.field
    locus = find_rational_basepoints(net)
    a1 = assumption1_check(net, locus.points)
    if not a1:
        raise DegenerateNetError(a1.message)
    if not locus.certified:
        raise IncompleteAnalysis(str(IncompleteBaseLocus(locus.points, 8 - locus.total)))
    chains = label_chains(locus.points, locus.multiplicities)
    rank2 = enumerate_rank2(net, locus.points)
    if not rank2.certified:
        raise IncompleteAnalysis("rank-2 members not certified; unsplit eliminants: " + "; ".join(rank2.unresolved))
    rr = mordell_weil_rank(net, locus, rank2)
    out = {
        "field": str(F),
        "forms": [str(f) for f in net.forms],
        "type": _type_str(rr.multiplicities),
        "basepoints": [
            {"point": str(c.point), "multiplicity": c.multiplicity, "indices": list(c.indices)} for c in chains
        ],
        "nondegenerate": bool(nondegeneracy_check(locus.points)),
        "n": rr.n,
        "d": rr.d,
        "rho": rr.rho,
        "extremal": rr.extremal,
        "A": rr.A,
        "B": rr.B,
        "C": rr.C,
        "D": rr.D,
        "h0": rr.h0,
        "rank2_members": [m.describe() for m in rank2.members],
    }
    if F.characteristic != 2:
        disc = discriminant_quartic(net)
        out["discriminant"] = str(disc)
        try:
            rs = quartic_root_system(disc)
        except IncompleteSingularities as exc:
            raise IncompleteAnalysis(str(exc)) from exc
        out["singularities"] = [str(r) for r in rs.records]
        out["root_system"] = str(rs)
        if rr.extremal and rs.rank == 7:
            out["mw_group"] = str(quotient_group(subsystem(rs.types)))
    return out


__all__ = [
    "CatalogEntry",
    "Check",
    "IncompleteAnalysis",
    "RouteCheck",
    "VerificationReport",
    "analyze_net",
    "bind_form_triple",
    "catalog_summary",
    "cross_check_routes",
    "find_entry",
    "load_catalog",
    "normalise_label",
    "reports_from_json",
    "reports_to_json",
    "verify_catalog",
    "verify_entry",
]
