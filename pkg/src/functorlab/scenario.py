"""scn/1 scenario files: JSON-compatible, versioned, hand-writable.

A scenario declares a ring, named ideals and modules, one functor
expression, a family (quotient or component), a box, and a task list.
Parsing is strict: unknown blocks, unresolved names, and malformed boxes
are semantic errors naming the offending block, before any computation
starts.
"""

import json
import os

from .errors import ConfigurationError
from .fpmodule import FPModule
from .functors import BUILDER_NAMES, FunctorExpression
from .grid import GridBox
from .multigraded import rees_module
from .poly import parse_poly, parse_vec, quotient_ring
from .rings import PolyRing
from .stability import OBSERVABLE_NAMES, FamilySpec
from .submodule import IdealFamily, ideal


FORMAT_TAG = "scn/1"

TASK_NAMES = (
    "normal_form", "stabilization", "fit", "degree_bound", "grade",
    "betti_bass", "component_track", "artin_rees",
)

TOP_KEYS = (
    "format", "label", "ring", "ideals", "modules", "functor", "family",
    "box", "tasks", "output",
)


def bundled_scenarios():
    """Names of the scenario files shipped inside the package."""
    root = os.path.join(os.path.dirname(__file__), "scenarios")
    return tuple(sorted(f for f in os.listdir(root) if f.endswith(".scn")))


def bundled_scenario_path(name):
    if not name.endswith(".scn"):
        name += ".scn"
    path = os.path.join(os.path.dirname(__file__), "scenarios", name)
    if not os.path.exists(path):
        raise ConfigurationError("no bundled scenario named %r" % name)
    return path


class Scenario:
    """Parsed and name-resolved scenario, ready for the runner."""

    __slots__ = (
        "label", "ring", "ideals", "modules", "submodules", "expression",
        "family_spec", "box", "tasks", "output_stem", "raw",
    )

    def __init__(self, label, ring, ideals, modules, submodules, expression,
                 family_spec, box, tasks, output_stem, raw):
        self.label = label
        self.ring = ring
        self.ideals = ideals
        self.modules = modules
        self.submodules = submodules
        self.expression = expression
        self.family_spec = family_spec
        self.box = box
        self.tasks = tasks
        self.output_stem = output_stem
        self.raw = raw


def _fail(block, message):
    raise ConfigurationError("%s block: %s" % (block, message))


def _require(data, block, key, types=None):
    if key not in data:
        _fail(block, "missing %r" % key)
    value = data[key]
    if types is not None and not isinstance(value, types):
        _fail(block, "%r has the wrong shape" % key)
    return value


def load_scenario_text(text, char_override=None):
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ConfigurationError(
            "parse error at line %d column %d: %s" % (exc.lineno, exc.colno, exc.msg)
        )
    return build_scenario(data, char_override=char_override)


def load_scenario(path, char_override=None):
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise ConfigurationError("cannot read scenario %s: %s" % (path, exc))
    return load_scenario_text(text, char_override=char_override)


def build_scenario(data, char_override=None):
    if not isinstance(data, dict):
        raise ConfigurationError("scenario must be a JSON object")
    if data.get("format") != FORMAT_TAG:
        raise ConfigurationError("scenario format must be %r" % FORMAT_TAG)
    unknown = [k for k in data if k not in TOP_KEYS]
    if unknown:
        raise ConfigurationError("unknown top-level blocks: %s" % ", ".join(sorted(unknown)))
    label = data.get("label", "")

    ring = _build_ring(_require(data, "scenario", "ring", dict), char_override)
    ideals = _build_ideals(ring, data.get("ideals", {}))
    modules, submodules = _build_modules(ring, data.get("modules", {}))
    expression = None
    if "functor" in data:
        expression = _build_expression(data["functor"], modules)
    family_spec = None
    if "family" in data:
        family_spec = _build_family(data["family"], ring, ideals, modules, submodules)
    box = None
    if "box" in data:
        box = _build_box(data["box"])
    tasks = _build_tasks(data.get("tasks", []), ideals, submodules)
    output = data.get("output", {})
    if not isinstance(output, dict):
        _fail("output", "must be an object")
    stem = output.get("stem", label.replace(" ", "_") or "scenario")
    return Scenario(
        label, ring, ideals, modules, submodules, expression, family_spec,
        box, tasks, stem, data,
    )


def _build_ring(block, char_override):
    variables = _require(block, "ring", "variables", list)
    if not variables or not all(isinstance(v, str) for v in variables):
        _fail("ring", "variables must be a nonempty list of names")
    char = block.get("characteristic", 32003)
    if char_override is not None:
        char = char_override
    weights = block.get("weights")
    base = PolyRing(tuple(variables), char=char, weights=weights)
    rels = block.get("base_relations", [])
    if rels:
        base = quotient_ring(base, rels)
    return base


def _build_ideals(ring, block):
    if not isinstance(block, dict):
        _fail("ideals", "must be an object of named generator lists")
    out = {}
    for name, gens in block.items():
        if not isinstance(gens, list):
            _fail("ideals", "%r must be a list of polynomial strings" % name)
        try:
            out[name] = ideal(ring, [parse_poly(ring, g) for g in gens])
        except ConfigurationError as exc:
            _fail("ideals", "%r: %s" % (name, exc))
    return out


def _build_modules(ring, block):
    if not isinstance(block, dict):
        _fail("modules", "must be an object of named declarations")
    modules = {}
    submodules = {}
    for name, decl in block.items():
        if not isinstance(decl, dict) or "type" not in decl:
            _fail("modules", "%r needs a type" % name)
        kind = decl["type"]
        if kind == "free":
            twists = decl.get("twists", [0])
            modules[name] = FPModule.free(ring, tuple(int(t) for t in twists))
        elif kind == "cyclic":
            gens = decl.get("polys")
            if not gens or not isinstance(gens, list):
                _fail("modules", "%r needs a nonempty polys list (use type free for the ring itself)" % name)
            modules[name] = FPModule.cyclic(ring, tuple(gens))
        elif kind == "presentation":
            twists = tuple(int(t) for t in decl.get("twists", [0]))
            cols = decl.get("columns", [])
            parsed = []
            for col in cols:
                if not isinstance(col, list) or len(col) != len(twists):
                    _fail("modules", "%r column shape does not match twists" % name)
                parsed.append(parse_vec(ring, col))
            modules[name] = FPModule.from_cokernel(ring, twists, parsed)
        elif kind == "submodule":
            host = decl.get("of")
            if host not in modules:
                _fail("modules", "%r refers to unknown module %r" % (name, host))
            vectors = []
            for entry in decl.get("vectors", []):
                if not isinstance(entry, list) or len(entry) != modules[host].rank:
                    _fail("modules", "%r vector shape does not match %r" % (name, host))
                vectors.append(parse_vec(ring, entry))
            submodules[name] = (host, tuple(vectors))
        else:
            _fail("modules", "%r has unknown type %r" % (name, kind))
    return modules, submodules


def _build_expression(block, modules):
    if not isinstance(block, dict) or "builder" not in block:
        _fail("functor", "needs a builder name")
    builder = block["builder"]
    if builder not in BUILDER_NAMES:
        _fail("functor", "unknown builder %r (have: %s)" % (builder, ", ".join(BUILDER_NAMES)))
    if builder == "compose":
        parts = block.get("parts", [])
        if not parts:
            _fail("functor", "compose needs parts")
        return FunctorExpression.compose(*[_build_expression(p, modules) for p in parts])
    mod_name = block.get("module")
    if mod_name not in modules:
        _fail("functor", "unknown module %r" % mod_name)
    m = modules[mod_name]
    label = block.get("label", "%s(%s)" % (builder, mod_name))
    if builder == "hom":
        return FunctorExpression.hom(m, label=label)
    if builder == "tensor":
        return FunctorExpression.tensor(m, label=label)
    i = block.get("i")
    if not isinstance(i, int) or i < 0:
        _fail("functor", "builder %r needs a nonnegative integer i" % builder)
    if builder == "ext":
        return FunctorExpression.ext(m, i, label=label)
    return FunctorExpression.tor(m, i, label=label)


def _family_ideals(block, ideals):
    names = _require(block, "family", "ideals", list)
    missing = [n for n in names if n not in ideals]
    if missing:
        _fail("family", "unknown ideals: %s" % ", ".join(missing))
    return IdealFamily([ideals[n] for n in names])


def _build_family(block, ring, ideals, modules, submodules):
    if not isinstance(block, dict):
        _fail("family", "must be an object")
    kind = block.get("kind")
    if kind == "quotient":
        fam = _family_ideals(block, ideals)
        mod_name = _require(block, "family", "module")
        if mod_name not in modules:
            _fail("family", "unknown module %r" % mod_name)
        m = modules[mod_name]
        sub_name = block.get("sub")
        if sub_name is not None:
            if sub_name not in submodules:
                _fail("family", "unknown submodule %r" % sub_name)
            host, vectors = submodules[sub_name]
            if host != mod_name:
                _fail("family", "submodule %r lives in %r, not %r" % (sub_name, host, mod_name))
        else:
            vectors = tuple(m.gens)
        return FamilySpec.quotient(m, vectors, fam, label=block.get("label", ""))
    if kind == "component":
        fam = _family_ideals(block, ideals)
        mod_name = _require(block, "family", "module")
        if mod_name not in modules:
            _fail("family", "unknown module %r" % mod_name)
        return FamilySpec.component(
            rees_module(fam, modules[mod_name]), label=block.get("label", "")
        )
    _fail("family", "kind must be 'quotient' or 'component'")


def _build_box(block):
    if not isinstance(block, dict):
        _fail("box", "must be an object")
    lo = _require(block, "box", "lo", list)
    hi = _require(block, "box", "hi", list)
    shell = block.get("shell", 1)
    try:
        return GridBox(tuple(int(a) for a in lo), tuple(int(b) for b in hi), int(shell))
    except Exception as exc:
        _fail("box", str(exc))


def _build_tasks(block, ideals, submodules):
    if not isinstance(block, list):
        _fail("tasks", "must be a list")
    tasks = []
    for i, entry in enumerate(block):
        if not isinstance(entry, dict) or "task" not in entry:
            _fail("tasks", "entry %d needs a task name" % i)
        name = entry["task"]
        if name not in TASK_NAMES:
            _fail("tasks", "unknown task %r (have: %s)" % (name, ", ".join(TASK_NAMES)))
        obs = entry.get("observable")
        if obs is not None and obs not in OBSERVABLE_NAMES:
            _fail("tasks", "unknown observable %r in task %r" % (obs, name))
        if name == "grade" and entry.get("ideal") not in ideals:
            _fail("tasks", "grade task needs a named ideal")
        if name == "artin_rees" and entry.get("sub") not in submodules:
            _fail("tasks", "artin_rees task needs a named submodule")
        tasks.append(dict(entry))
    return tasks
