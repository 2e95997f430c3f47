"""Serialisable run reports.

Every command produces the same envelope: engine version, command name,
an echo of the manifest that drove the run, a results block, and the
wall time.  Everything except the timing is deterministic, and the
echoed manifest is itself loadable and reproduces the verdicts; the
tests hold both properties.

The per-command row list feeds the text renderer and the CSV file, so
the two always agree.
"""

import json
import time

from . import __version__
from .category import (
    TorsionObject, betti_table, gtensor, is_compact, is_dualisable,
    recognize_shifted_unit, spectrum_report, sw_dual,
)
from .completion import gm_check, hensel_quadratic
from .complexes import EuclidSummand, FieldSummand, homology
from .errors import NotDualisableError, UsageError
from .grobner import ModulePresentation, module_vector_dimension
from .laws import kproj_demo, run_suite
from .manifest import object_to_data, ring_to_data
from .pidmodel import (
    TorsionInvariants, betti_from_invariants, classify_inv, dual_inv,
    tensor_inv,
)
from .resolutions import betti_at_prime, finiteness_decision


class Report:
    """Envelope dict plus the table rows and an optional figure spec."""

    __slots__ = ("data", "rows", "figure")

    def __init__(self, data, rows, figure=None):
        self.data = data
        self.rows = rows
        self.figure = figure

    def to_json(self):
        return json.dumps(self.data, sort_keys=True, indent=2) + "\n"

    def to_text(self):
        head = "%s  %s" % (self.data["engine"], self.data["command"])
        lines = [head, "-" * len(head)]
        if self.rows:
            widths = [max(len(str(r[i])) for r in self.rows)
                      for i in range(len(self.rows[0]))]
            for r in self.rows:
                lines.append("  ".join(
                    str(v).ljust(w) for v, w in zip(r, widths)).rstrip())
        return "\n".join(lines) + "\n"

    def write_csv(self, path):
        with open(path, "w") as fh:
            for r in self.rows:
                fh.write(",".join(str(v) for v in r) + "\n")


def has_unknown(report):
    """True when any verdict in the results is an at-cutoff shrug."""
    def walk(node):
        if isinstance(node, dict):
            if node.get("kind") in ("Unknown", "UnknownAtCutoff"):
                return True
            return any(walk(v) for v in node.values())
        if isinstance(node, list):
            return any(walk(v) for v in node)
        return False
    return walk(report.data["results"])


def _finish(command, echo, results, rows, t0, figure=None):
    data = {
        "engine": "torsiondual %s" % __version__,
        "command": command,
        "object": echo,
        "results": results,
        "timing_ms": int((time.perf_counter() - t0) * 1000),
    }
    return Report(data, rows, figure)


def _echo(m, **params):
    out = {"ring": ring_to_data(m.ring)}
    if m.prime is not None:
        out["prime"] = [m.ring.fmt(g.data) for g in m.prime.gens]
    if m.objects:
        out["objects"] = {name: object_to_data(obj)
                          for name, obj in m.objects.items()}
    merged = dict(m.parameters)
    for k, v in params.items():
        if v is not None:
            merged[k] = v
    if merged:
        out["parameters"] = merged
    return out


def _need_prime(m):
    if m.prime is None:
        raise UsageError("this command needs a prime in the manifest")
    return m.prime


def _need_objects(m, count=None):
    if not m.objects:
        raise UsageError("this command needs at least one object")
    if count is not None and len(m.objects) != count:
        raise UsageError("this command needs exactly %d object(s), got %d"
                         % (count, len(m.objects)))
    return sorted(m.objects.items())


def _cutoff_of(m, flag):
    return flag if flag is not None else m.parameters.get("cutoff")


def _str_table(table):
    return {str(d): v for d, v in sorted(table.items())}


def _decision_data(d):
    if d.kind == "Finite":
        return {"kind": "Finite", "total": d.total,
                "table": _str_table(d.table)}
    if d.kind == "PeriodicInfinite":
        return {"kind": "PeriodicInfinite", "period": d.period,
                "onset": d.onset}
    return {"kind": "UnknownAtCutoff", "cutoff": d.cutoff}


def _verdict_data(v):
    if v.kind == "Dualisable":
        return {"kind": "Dualisable", "total": v.total,
                "table": _str_table(v.table)}
    if v.kind == "NotDualisable":
        return {"kind": "NotDualisable",
                "certificate": _decision_data(v.certificate)}
    return {"kind": "Unknown", "cutoff": v.cutoff}


_INV_CLASS = {
    # dualisable?, compact?
    "Compact": (True, True),
    "DualisableNotCompact": (True, False),
    "NotInGamma": (False, False),
}


def _classify_invariants(inv):
    cls = classify_inv(inv)
    dualisable, compact = _INV_CLASS[cls]
    if dualisable:
        table = betti_from_invariants(inv)
        verdict = {"kind": "Dualisable",
                   "total": sum(table.values()),
                   "table": _str_table(table)}
        shift = None
        if sum(table.values()) == 1:
            (deg, b), = table.items()
            shift = -deg
    else:
        verdict = {"kind": "NotDualisable",
                   "certificate": {"kind": cls}}
        shift = None
    return verdict, compact, shift


def _betti_from_verdict(verdict):
    if verdict["kind"] == "Dualisable":
        return {int(d): b for d, b in verdict["table"].items()}
    return None


def run_classify(m, cutoff=None):
    t0 = time.perf_counter()
    cut = _cutoff_of(m, cutoff)
    items = _need_objects(m)
    results = {}
    rows = [("object", "verdict", "compact", "shifted_unit", "total_betti")]
    tables = {}
    for name, obj in items:
        if isinstance(obj, TorsionInvariants):
            verdict, compact, shift = _classify_invariants(obj)
        else:
            x = TorsionObject(obj, _need_prime(m))
            verdict = _verdict_data(is_dualisable(x, cut))
            compact = is_compact(x)
            shift = recognize_shifted_unit(x, cut)
        results[name] = {"verdict": verdict, "compact": compact,
                         "shifted_unit": shift}
        table = _betti_from_verdict(verdict)
        if table:
            tables[name] = table
        rows.append((name, verdict["kind"],
                     "yes" if compact else "no",
                     "-" if shift is None else shift,
                     verdict.get("total", "-")))
    fig = ("bars", tables, "Betti numbers") if tables else None
    return _finish("classify", _echo(m, cutoff=cut), results, rows, t0, fig)


def run_betti(m, cutoff=None):
    t0 = time.perf_counter()
    cut = _cutoff_of(m, cutoff)
    results = {}
    rows = [("object", "degree", "betti")]
    tables = {}
    for name, obj in _need_objects(m):
        if isinstance(obj, TorsionInvariants):
            table = betti_from_invariants(obj)
            decision = None
        else:
            prime = _need_prime(m)
            table = betti_at_prime(obj, prime, cut)
            decision = _decision_data(finiteness_decision(obj, prime, cut))
        results[name] = {"table": _str_table(table)}
        if decision is not None:
            results[name]["decision"] = decision
        tables[name] = dict(table)
        for d in sorted(table):
            rows.append((name, d, table[d]))
    fig = ("bars", tables, "Betti numbers") if tables else None
    return _finish("betti", _echo(m, cutoff=cut), results, rows, t0, fig)


def _summand_data(s):
    if isinstance(s, FieldSummand):
        return {"kind": "dim", "dim": s.dim}
    if isinstance(s, EuclidSummand):
        return {"kind": "euclid", "free_rank": s.free_rank,
                "factors": [s.ring.fmt(f) for f in s.factors]}
    vd = module_vector_dimension(s.pres)
    out = {"kind": "presented", "gens": s.pres.ambient_rank,
           "relations": s.pres.relations.ncols}
    if vd is not None:
        out["vector_dim"] = vd
    return out


def _summand_size(data):
    if data["kind"] == "dim":
        return data["dim"]
    if data["kind"] == "euclid":
        return data["free_rank"] + len(data["factors"])
    return data.get("vector_dim", data["gens"])


def _summand_text(data):
    if data["kind"] == "dim":
        return "k^%d" % data["dim"]
    if data["kind"] == "euclid":
        bits = (["free^%d" % data["free_rank"]] if data["free_rank"] else []) \
            + ["cyclic(%s)" % f for f in data["factors"]]
        return " + ".join(bits) if bits else "0"
    tail = ", vdim %d" % data["vector_dim"] if "vector_dim" in data else ""
    return "presented(%d gens, %d relations%s)" % (
        data["gens"], data["relations"], tail)


def run_homology(m):
    t0 = time.perf_counter()
    results = {}
    rows = [("object", "degree", "homology")]
    sizes = {}
    for name, obj in _need_objects(m):
        if isinstance(obj, TorsionInvariants):
            raise UsageError("homology needs a complex or module, "
                             "not an invariants object")
        if isinstance(obj, ModulePresentation):
            per = {0: _summand_data_from_module(obj)}
        else:
            H = homology(obj)
            per = {n: _summand_data(H.summand(n)) for n in H.support()}
        results[name] = {str(n): per[n] for n in sorted(per)}
        sizes[name] = {n: _summand_size(per[n]) for n in per}
        for n in sorted(per):
            rows.append((name, n, _summand_text(per[n])))
    fig = ("bars", sizes, "Homology size by degree") if sizes else None
    return _finish("homology", _echo(m), results, rows, t0, fig)


def _summand_data_from_module(pres):
    out = {"kind": "presented", "gens": pres.ambient_rank,
           "relations": pres.relations.ncols}
    vd = module_vector_dimension(pres)
    if vd is not None:
        out["vector_dim"] = vd
    return out


def run_tensor(m, cutoff=None):
    t0 = time.perf_counter()
    cut = _cutoff_of(m, cutoff)
    (na, a), (nb, b) = _need_objects(m, count=2)
    if isinstance(a, TorsionInvariants) != isinstance(b, TorsionInvariants):
        raise UsageError("cannot tensor an invariants object with a complex")
    if isinstance(a, TorsionInvariants):
        prod = tensor_inv(a, b)
        results = {"product": object_to_data(prod),
                   "class": classify_inv(prod)}
        table = betti_from_invariants(prod) \
            if results["class"] != "NotInGamma" else {}
    else:
        prime = _need_prime(m)
        x = gtensor(TorsionObject(a, prime), TorsionObject(b, prime), cut)
        verdict = _verdict_data(is_dualisable(x, cut))
        results = {"product": object_to_data(x.carrier),
                   "verdict": verdict,
                   "compact": is_compact(x)}
        table = _betti_from_verdict(verdict) or {}
    rows = [("degree", "betti")] + [(d, table[d]) for d in sorted(table)]
    name = "%s (x) %s" % (na, nb)
    fig = ("bars", {name: table}, "Betti of the product") if table else None
    return _finish("tensor", _echo(m, cutoff=cut), results, rows, t0, fig)


def run_dual(m, cutoff=None):
    t0 = time.perf_counter()
    cut = _cutoff_of(m, cutoff)
    (name, obj), = _need_objects(m, count=1)
    if isinstance(obj, TorsionInvariants):
        d = dual_inv(obj)
        results = {"dual": object_to_data(d), "class": classify_inv(d)}
        table = betti_from_invariants(d) \
            if results["class"] != "NotInGamma" else {}
    else:
        x = TorsionObject(obj, _need_prime(m))
        try:
            d = sw_dual(x, cut)
        except NotDualisableError:
            verdict = _verdict_data(is_dualisable(x, cut))
            results = {"dual": None, "verdict": verdict}
            rows = [("object", "verdict"), (name, verdict["kind"])]
            return _finish("dual", _echo(m, cutoff=cut), results, rows, t0)
        results = {"dual": object_to_data(d.carrier),
                   "verdict": _verdict_data(is_dualisable(d, cut))}
        table = betti_table(d, cut)
    rows = [("degree", "betti")] + [(d_, table[d_]) for d_ in sorted(table)]
    fig = ("bars", {"dual of %s" % name: dict(table)},
           "Betti of the dual") if table else None
    return _finish("dual", _echo(m, cutoff=cut), results, rows, t0, fig)


def run_gm_check(m):
    t0 = time.perf_counter()
    results = {}
    rows = [("object", "identity", "ok")]
    for name, obj in _need_objects(m):
        if not isinstance(obj, TorsionInvariants):
            raise UsageError("gm-check works on invariants objects")
        rep = gm_check(obj).to_dict()
        results[name] = rep
        for ident in rep["identities"]:
            rows.append((name, ident["identity"],
                         "yes" if ident["ok"] else "NO"))
    return _finish("gm-check", _echo(m), results, rows, t0)


def run_hensel(c_text, precision):
    t0 = time.perf_counter()
    out = hensel_quadratic(c_text, precision)
    if out.kind == "Factors":
        f1, f2 = out.factor_strings()
        results = {"status": "factors", "precision": out.precision,
                   "root": out.root.fmt(), "factors": [f1, f2]}
        rows = [("factor",), (f1,), (f2,)]
    else:
        results = {"status": "irreducible", "obstruction": out.obstruction,
                   "reason": out.reason}
        rows = [("obstruction", "reason"), (out.obstruction, out.reason)]
    echo = {"discriminant": c_text, "parameters": {"precision": precision}}
    return _finish("hensel", echo, results, rows, t0)


def run_kproj(m, cutoff=None):
    t0 = time.perf_counter()
    cut = _cutoff_of(m, cutoff)
    if cut is None:
        cut = 12
    if m.objects:
        items = _need_objects(m)
        if len(items) == 1:
            M = N = items[0][1]
        elif len(items) == 2:
            M, N = items[0][1], items[1][1]
        else:
            raise UsageError("kproj-demo takes one or two module objects")
    else:
        M = N = ModulePresentation.cyclic(m.ring, list(m.ring.vars))
    rep = kproj_demo(m.ring, M, N, cut)
    results = rep.to_dict()
    rows = [("degree", "rank")] + [(d, rep.table[d])
                                   for d in sorted(rep.table)]
    fig = ("curve", dict(rep.table), "Hom-tensor growth")
    return _finish("kproj-demo", _echo(m, cutoff=cut), results, rows, t0, fig)


def run_spectrum(m):
    t0 = time.perf_counter()
    line = spectrum_report(_need_prime(m))
    results = {"report": line}
    rows = [("report",), (line,)]
    return _finish("spectrum", _echo(m), results, rows, t0)


def run_laws(seed=0, suite=None, counts=None):
    t0 = time.perf_counter()
    rep = run_suite(seed=seed, suite=suite, counts=counts)
    results = rep.to_dict()
    rows = [("case", "law", "verdict")]
    for c in rep.cases:
        rows.append((c.case_id, c.law, c.verdict))
    echo = {"parameters": {"seed": seed}}
    if suite:
        echo["parameters"]["suite"] = suite
    tally = {}
    for c in rep.cases:
        suite_name = c.case_id.split("/")[0]
        tally.setdefault(suite_name, {})
        tally[suite_name][c.verdict] = \
            tally[suite_name].get(c.verdict, 0) + 1
    sizes = {s: {0: t.get("pass", 0), 1: t.get("skip", 0),
                 2: t.get("fail", 0)} for s, t in tally.items()}
    fig = ("bars", sizes, "Law cases by outcome (pass/skip/fail)")
    return _finish("laws", echo, results, rows, t0, fig)
