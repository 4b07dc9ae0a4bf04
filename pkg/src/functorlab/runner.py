"""Scenario execution: tasks in, deterministic report out.

Each task appends one result entry. Hard assertions (normal-form
validation, fit validation, the degree-bound law, Artin-Rees window
equality, explicit scenario asserts) set FAIL; unexpected engine errors
set ERROR with the operation named. Timings never enter the report body;
they ride in the meta sidecar so byte-identical reports survive reruns.
"""

import time
from fractions import Fraction

from .cache import active_cache
from .errors import CapExceeded, ConfigurationError, ContractViolation, StrategyExhausted
from .fitting import fit_polynomial
from .functors import evaluate, evaluate_expression
from .multigraded import analytic_spread, artin_rees_exponent, intersection_strand
from .oracles import grade_by_regular_sequence
from .stability import (
    betti_bass_asymptotics,
    component_track,
    degree_bound_check,
    detect_stabilization,
    grade_asymptotics,
    grid_evaluate,
    normal_form,
)


ENGINE_VERSION = "0.1.0"
INF = float("inf")


def _clean(value):
    if isinstance(value, Fraction):
        return "%d/%d" % (value.numerator, value.denominator) if value.denominator != 1 \
            else str(value.numerator)
    if isinstance(value, float):
        if value == INF:
            return "inf"
        if value == -INF:
            return "-inf"
        return value
    if isinstance(value, dict):
        return {_point_key(k): _clean(v) for k, v in sorted(value.items(), key=lambda kv: str(kv[0]))}
    if isinstance(value, (list, tuple)):
        return [_clean(v) for v in value]
    return value


def _point_key(p):
    if isinstance(p, tuple):
        return ",".join(str(x) for x in p)
    return str(p)


def _fit_payload(fit):
    if fit is None:
        return {"status": "no polynomial fit on box"}
    return fit.as_dict()


def _single_functor(scn, task_name):
    expr = scn.expression
    if expr is None:
        raise ConfigurationError("%s task needs a functor block" % task_name)
    if expr.kind == "compose":
        raise ConfigurationError(
            "%s task needs a single functor, not a composition" % task_name
        )
    return expr.functor


def _need_quotient(scn, task_name):
    spec = scn.family_spec
    if spec is None or spec.kind != "quotient":
        raise ConfigurationError("%s task needs a quotient family" % task_name)
    return spec


def _need_box(scn, task_name):
    if scn.box is None:
        raise ConfigurationError("%s task needs a box block" % task_name)
    return scn.box


def _task_expr(scn, task):
    if task.get("identity"):
        return None
    return scn.expression


def _default_cap(scn):
    spec = scn.family_spec
    if spec.kind == "quotient" and scn.expression is not None \
            and scn.expression.kind != "compose":
        fm = evaluate(scn.expression.functor, spec.module)
        spread = analytic_spread(spec.module, spec.family)
        bound = max(fm.dim(), spread - spec.r)
        if bound == -INF:
            bound = 0
        return int(bound) + 1
    if spec.kind == "quotient":
        spread = analytic_spread(spec.module, spec.family)
        return max(0, spread - spec.r) + max(spec.module.dim(), 0) + 1
    dims = spec.mgmodule.algebra.aq.nvars
    room = min(h - scn.box.shell - a for h, a in zip(scn.box.hi, scn.box.lo))
    return max(0, min(dims, room))


def _lambda_table(scn, task, jobs):
    expr = _task_expr(scn, task)
    obs = grid_evaluate(expr, scn.family_spec, scn.box, ("lambda",), jobs=jobs)
    return {p: row["lambda"] for p, row in obs.items()}


def _check_fit_asserts(task, fit):
    failures = []
    want_deg = task.get("assert_degree")
    if want_deg is not None and fit.total_degree != want_deg:
        failures.append("degree %d != expected %d" % (fit.total_degree, want_deg))
    want_onset = task.get("assert_onset")
    if want_onset is not None and list(fit.onset) != list(want_onset):
        failures.append("onset %r != expected %r" % (list(fit.onset), list(want_onset)))
    for key, expected in (task.get("assert_values") or {}).items():
        point = tuple(int(x) for x in str(key).split(","))
        got = fit.evaluate(point)
        if got != Fraction(expected):
            failures.append("value at %s is %s, expected %s" % (key, got, expected))
    return failures


def run_fit(scn, task, jobs):
    spec = scn.family_spec
    if spec is None:
        raise ConfigurationError("fit task needs a family block")
    box = _need_box(scn, "fit")
    table = _lambda_table(scn, task, jobs)
    cap = task.get("degree_cap", _default_cap(scn))
    fit = fit_polynomial(table, box, cap)
    result = {
        "degree_cap": cap,
        "lambda_table": table,
        "fit": _fit_payload(fit),
    }
    if fit is None:
        return result, ["no polynomial fit validated on the box"]
    return result, _check_fit_asserts(task, fit)


def run_normal_form(scn, task, jobs):
    spec = _need_quotient(scn, "normal_form")
    box = _need_box(scn, "normal_form")
    functor = _single_functor(scn, "normal_form")
    mode = task.get("mode", "certified")
    try:
        nf = normal_form(
            functor, spec.module, list(spec.sub_vectors), spec.family, box, ar_mode=mode
        )
    except ContractViolation as exc:
        return {"error": str(exc)}, [str(exc)]
    result = {
        "c": list(nf.c),
        "d": list(nf.d),
        "validated_points": [list(p) for p in nf.validated],
        "u_generators": len(nf.u),
        "v_generators": len(nf.v),
        "w_generators": len(nf.w),
        "provenance": dict(nf.provenance),
        "member_lengths": {
            p: nf.member_value(p).length()
            for p in nf.validated
        },
    }
    return result, []


def run_stabilization(scn, task, jobs):
    spec = scn.family_spec
    if spec is None:
        raise ConfigurationError("stabilization task needs a family block")
    box = _need_box(scn, "stabilization")
    name = task.get("observable", "ass")
    expr = _task_expr(scn, task)
    grade_ideal = scn.ideals.get(task["ideal"]) if "ideal" in task else None
    obs = grid_evaluate(expr, spec, box, (name,), grade_ideal=grade_ideal, jobs=jobs)
    table = {p: row[name] for p, row in obs.items()}
    verdict = detect_stabilization(table, box)
    result = {"observable": name, "table": table, "verdict": verdict}
    failures = []
    if task.get("assert_stable") and not verdict["stable"]:
        failures.append("observable %s is not constant on the shell" % name)
    if "expect_value" in task:
        expected = task["expect_value"]
        if isinstance(expected, list):
            expected = [tuple(e) if isinstance(e, list) else e for e in expected]
        elif expected == "inf":
            expected = INF
        if verdict["value"] != expected:
            failures.append(
                "stable value %r != expected %r" % (verdict["value"], expected)
            )
    return result, failures


def run_degree_bound(scn, task, jobs):
    spec = _need_quotient(scn, "degree_bound")
    box = _need_box(scn, "degree_bound")
    functor = _single_functor(scn, "degree_bound")
    table = _lambda_table(scn, task, jobs)
    cap = task.get("degree_cap", _default_cap(scn))
    fit = fit_polynomial(table, box, cap)
    if fit is None:
        return {"fit": _fit_payload(None)}, ["no polynomial fit to bound"]
    verdict = degree_bound_check(functor, spec.module, spec.family, fit)
    result = {"fit": _fit_payload(fit), "bound_check": verdict, "lambda_table": table}
    failures = []
    if verdict["verdict"] != "PASS":
        failures.append(
            "degree bound violated: degree %s vs bound %s"
            % (verdict["degree"], verdict["bound"])
        )
    cap_assert = task.get("assert_max_degree")
    if cap_assert is not None and fit.total_degree > cap_assert:
        failures.append(
            "fitted degree %d exceeds asserted maximum %d" % (fit.total_degree, cap_assert)
        )
    return result, failures


def run_grade(scn, task, jobs):
    spec = scn.family_spec
    if spec is None:
        raise ConfigurationError("grade task needs a family block")
    box = _need_box(scn, "grade")
    grade_ideal = scn.ideals[task["ideal"]]
    expr = _task_expr(scn, task)
    rep = grade_asymptotics(grade_ideal, expr, spec, box, jobs=jobs)
    result = {"table": rep["table"], "verdict": rep["verdict"], "ideal": task["ideal"]}
    failures = []
    if "expect_value" in task:
        expected = INF if task["expect_value"] == "inf" else task["expect_value"]
        if rep["verdict"]["value"] != expected:
            failures.append(
                "stable grade %r != expected %r" % (rep["verdict"]["value"], expected)
            )
    if task.get("oracle"):
        polys = [v.components(1)[0] for v in grade_ideal.gens]
        for p in sorted(rep["table"]):
            member = spec.member(p)
            module = member if expr is None else evaluate_expression(expr, member)
            brute = grade_by_regular_sequence(polys, module)
            if brute != rep["table"][p]:
                failures.append(
                    "grade oracle disagrees at %s: %s vs %s"
                    % (_point_key(p), brute, rep["table"][p])
                )
                break
        result["oracle"] = "checked"
    return result, failures


def run_betti_bass(scn, task, jobs):
    spec = scn.family_spec
    if spec is None:
        raise ConfigurationError("betti_bass task needs a family block")
    box = _need_box(scn, "betti_bass")
    i_max = task.get("i_max", 3)
    rep = betti_bass_asymptotics(_task_expr(scn, task), spec, box, i_max, jobs=jobs)
    result = {
        "fits": {k: _fit_payload(f) for k, f in rep["fits"].items()},
        "bounds": rep["bounds"],
        "verdicts": rep["verdicts"],
    }
    failures = []
    for name, check in rep["bounds"].items():
        if check["verdict"] != "PASS":
            failures.append("%s breaks the degree bound" % name)
    for key in ("pd", "id"):
        want = task.get("assert_%s" % key)
        if want is not None and rep["verdicts"][key]["value"] != want:
            failures.append(
                "%s stable value %r != expected %r"
                % (key, rep["verdicts"][key]["value"], want)
            )
    return result, failures


def run_component_track(scn, task, jobs):
    spec = scn.family_spec
    if spec is None or spec.kind != "component":
        raise ConfigurationError("component_track task needs a component family")
    box = _need_box(scn, "component_track")
    observables = tuple(task.get("observables", ("lambda",)))
    grade_ideal = scn.ideals.get(task["ideal"]) if "ideal" in task else None
    rep = component_track(
        spec.mgmodule, _task_expr(scn, task), box, observables=observables,
        grade_ideal=grade_ideal, jobs=jobs,
    )
    fit = rep["fits"].get("lambda")
    result = {
        "observations": rep["observations"],
        "verdicts": rep["verdicts"],
        "fits": {
            k: (_fit_payload(f) if not isinstance(f, dict) else f)
            for k, f in rep["fits"].items()
        },
        "notes": rep["notes"],
    }
    if "lambda" in observables:
        result["lambda_table"] = {
            p: row["lambda"] for p, row in rep["observations"].items()
        }
    failures = []
    if "lambda" in observables:
        if fit is None or isinstance(fit, dict):
            failures.append("lambda fit did not validate on the strand family")
        else:
            failures.extend(_check_fit_asserts(task, fit))
    expect_ass = task.get("expect_ass")
    if expect_ass is not None:
        got = rep["verdicts"].get("ass", {}).get("value")
        want = [tuple(entry) for entry in expect_ass]
        if got != want:
            failures.append("stable Ass %r != expected %r" % (got, want))
    return result, failures


def run_artin_rees(scn, task, jobs):
    spec = _need_quotient(scn, "artin_rees")
    box = _need_box(scn, "artin_rees")
    host, vectors = scn.submodules[task["sub"]]
    module = scn.modules[host]
    mode = task.get("mode", "certified")
    d, verdict = artin_rees_exponent(
        spec.family, module, list(vectors), mode=mode, box=(box.lo, box.hi)
    )
    window = int(task.get("window", 8))
    w = module.rels_sub()
    base = intersection_strand(spec.family, module, list(vectors), d)
    checked = []
    failures = []
    for step in range(window + 1):
        n = tuple(a + step for a in d)
        left = intersection_strand(spec.family, module, list(vectors), n)
        gap = tuple(a - b for a, b in zip(n, d))
        right = spec.family.apply(gap, base).plus(w)
        if not left.equals(right):
            failures.append("Artin-Rees equality fails at %s" % _point_key(n))
            break
        checked.append(n)
    result = {
        "d": list(d),
        "verdict": verdict,
        "window_checked": [list(n) for n in checked],
    }
    expect = task.get("expect")
    if expect is not None and list(d) != list(expect):
        failures.append("exponent %r != expected %r" % (list(d), list(expect)))
    return result, failures


TASK_RUNNERS = {
    "fit": run_fit,
    "normal_form": run_normal_form,
    "stabilization": run_stabilization,
    "degree_bound": run_degree_bound,
    "grade": run_grade,
    "betti_bass": run_betti_bass,
    "component_track": run_component_track,
    "artin_rees": run_artin_rees,
}


def run_scenario_object(scn, jobs=1):
    """Execute every task; returns (exit_code, report_dict, meta_dict)."""
    entries = []
    timings = {}
    exit_code = 0
    start_all = time.monotonic()
    for index, task in enumerate(scn.tasks):
        name = task["task"]
        slot = "%d:%s" % (index, name)
        started = time.monotonic()
        entry = {"task": name, "options": _clean(dict(task))}
        try:
            result, failures = TASK_RUNNERS[name](scn, task, jobs)
            entry.update(_clean(result))
            if failures:
                entry["status"] = "FAIL"
                entry["failures"] = failures
                exit_code = max(exit_code, 1)
            else:
                entry["status"] = "PASS"
        except ConfigurationError:
            raise
        except (ContractViolation, CapExceeded, StrategyExhausted) as exc:
            entry["status"] = "ERROR"
            entry["error"] = "%s: %s" % (type(exc).__name__, exc)
            exit_code = max(exit_code, 3)
        timings[slot] = round(time.monotonic() - started, 6)
        entries.append(entry)
    status = "PASS" if exit_code == 0 else ("FAIL" if exit_code == 1 else "ERROR")
    report = {
        "format": "report/1",
        "engine": {"name": "functorlab", "version": ENGINE_VERSION},
        "label": scn.label,
        "scenario": scn.raw,
        "tasks": entries,
        "status": status,
        "exit_code": exit_code,
    }
    meta = {
        "timings_seconds": timings,
        "total_seconds": round(time.monotonic() - start_all, 6),
        "cache": active_cache().stats(),
        "jobs": jobs,
    }
    return exit_code, report, meta
