"""Command-line entry point: ``pathvariety <group> <command> [inputs] [flags]``.

Inputs are JSON files (``-`` reads stdin); output is canonical JSON on
stdout.  Exit status is 0 on success, 2 on invalid input and 1 on an
internal error.
"""

from __future__ import annotations

import argparse
import json
import random
import sys

from . import freealg, ideals, io, paths, series, varieties
from .errors import ValidationError
from .freealg import parse_word
from .generate import random_lie, random_path

# (group, command) -> (handler, operations reached); filled by @command
COMMANDS: dict = {}


def command(group, name, ops, *arguments):
    def deco(fn):
        COMMANDS[(group, name)] = (fn, tuple(ops), arguments)
        return fn

    return deco


def arg(*names, **kw):
    return names, kw


def _load(path):
    try:
        if path == "-":
            return json.load(sys.stdin)
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ValidationError(f"cannot read {path}: {exc.strerror}", path) from exc
    except json.JSONDecodeError as exc:
        raise ValidationError(f"malformed JSON in {path}: {exc.msg}", path) from exc


def _tensors(args, *names):
    docs = [_load(getattr(args, n)) for n in names]
    dim = args.dim or max(io.infer_dim(d) for d in docs)
    return [io.tensor_from_json(d, dim) for d in docs]


def _cert(obj, level):
    obj["certified_level"] = level
    return obj


# tensor


def _binary(op):
    def handler(args):
        x, y = _tensors(args, "a", "b")
        return io.tensor_to_json(op(x, y))

    return handler


TWO = (arg("a"), arg("b"))
command("tensor", "concat", ["concat_product"], *TWO)(_binary(freealg.concat_product))
command("tensor", "shuffle", ["shuffle"], *TWO)(_binary(freealg.shuffle))
command("tensor", "hsr", ["half_shuffle_right"], *TWO)(_binary(freealg.half_shuffle_right))
command("tensor", "hsl", ["half_shuffle_left"], *TWO)(_binary(freealg.half_shuffle_left))


@command("tensor", "antipode", ["antipode"], arg("x"))
def _antipode(args):
    (x,) = _tensors(args, "x")
    return io.tensor_to_json(freealg.antipode(x))


@command("tensor", "deconcat", ["deconcat"], arg("x"))
def _deconcat(args):
    (x,) = _tensors(args, "x")
    return [{"left": io.tensor_to_json(a), "right": io.tensor_to_json(b)} for a, b in freealg.deconcat(x)]


@command("tensor", "phi", ["phi"], arg("poly"))
def _phi(args):
    p = io.polynomial_from_json(_load(args.poly))
    return io.tensor_to_json(ideals.phi(p, args.dim or p.nvars))


@command("tensor", "mp", ["m_p"], arg("map"), arg("x"))
def _mp(args):
    p = io.polynomial_map_from_json(_load(args.map))
    x = io.tensor_from_json(_load(args.x), p.target_dim)
    return io.tensor_to_json(ideals.m_p(p, x))


def _extend(mode):
    def handler(args):
        B = io.letter_map_from_json(_load(args.map))
        x = io.tensor_from_json(_load(args.x), B.source_dim)
        return io.tensor_to_json(freealg.letter_map_extend(B, x, mode))

    return handler


command("tensor", "lambda", ["letter_map_extend"], arg("map"), arg("x"))(_extend("lambda"))
command("tensor", "map", ["letter_map_extend"], arg("map"), arg("x"))(_extend("multiplicative"))


# series


def _series(args, *names):
    return [io.series_from_json(_load(getattr(args, n)), args.dim) for n in names]


@command("series", "mul", ["series_mul"], *TWO)
def _smul(args):
    g, h = _series(args, "a", "b")
    return io.series_to_json(series.series_mul(g, h))


@command("series", "inv", ["series_inverse"], arg("g"))
def _sinv(args):
    (g,) = _series(args, "g")
    return io.series_to_json(series.series_inverse(g))


@command("series", "exp", ["exp_conc"], arg("g"))
def _sexp(args):
    (g,) = _series(args, "g")
    return io.series_to_json(series.exp_conc(g))


@command("series", "log", ["log_conc"], arg("g"))
def _slog(args):
    (g,) = _series(args, "g")
    return io.series_to_json(series.log_conc(g))


@command("series", "grouplike", ["is_grouplike"], arg("g"))
def _sgroup(args):
    (g,) = _series(args, "g")
    return _cert({"grouplike": series.is_grouplike(g)}, g.level)


@command("series", "lie", ["is_lie"], arg("g"))
def _slie(args):
    (g,) = _series(args, "g")
    return _cert({"lie": series.is_lie(g)}, g.level)


@command("series", "pair", ["pair"], arg("g"), arg("x"))
def _spair(args):
    (g,) = _series(args, "g")
    x = io.tensor_from_json(_load(args.x), g.dim)
    return {"value": io.frac_str(series.pair(g, x))}


@command("series", "coord", ["first_kind_coordinate"], arg("g"), arg("x"))
def _scoord(args):
    (g,) = _series(args, "g")
    x = io.tensor_from_json(_load(args.x), g.dim)
    return {"value": io.frac_str(series.first_kind_coordinate(x, g))}


# path


def _level(args):
    if args.level is None:
        raise ValidationError("--level is required", "level")
    return args.level


@command("path", "sig", ["signature"], arg("path"))
def _psig(args):
    X = io.path_from_json(_load(args.path))
    return io.series_to_json(paths.signature(X, _level(args)))


@command("path", "stopped", ["stopped_signature_poly"], arg("path"), arg("--word", required=True))
def _pstopped(args):
    X = io.path_from_json(_load(args.path))
    polys = paths.stopped_signature_poly(X, parse_word(args.word, X.dim))
    return {"word": args.word, "segments": [[io.frac_str(c) for c in p] or ["0"] for p in polys]}


@command("path", "concat", ["concat"], arg("a"), arg("b"))
def _pconcat(args):
    return io.path_to_json(paths.concat(io.path_from_json(_load(args.a)), io.path_from_json(_load(args.b))))


@command("path", "reverse", ["reverse"], arg("path"))
def _preverse(args):
    return io.path_to_json(paths.reverse(io.path_from_json(_load(args.path))))


@command("path", "subpath", ["left_subpath"], arg("path"), arg("--segment", type=int, required=True), arg("--stop", required=True))
def _psub(args):
    X = io.path_from_json(_load(args.path))
    return io.path_to_json(paths.left_subpath(X, args.segment, freealg.to_fraction(args.stop)))


@command("path", "apply-poly", ["apply_polynomial_map"], arg("map"), arg("path"))
def _papply(args):
    p = io.polynomial_map_from_json(_load(args.map))
    return io.path_to_json(paths.apply_polynomial_map(p, io.path_from_json(_load(args.path))))


@command("path", "lambda-star", ["lambda_star"], arg("map"), arg("path"))
def _plambda(args):
    B = io.letter_map_from_json(_load(args.map))
    return io.path_to_json(paths.lambda_star(B, io.path_from_json(_load(args.path))))


@command("path", "delta-shift", ["delta_shift"], arg("map"), arg("g"))
def _pdelta(args):
    B = io.letter_map_from_json(_load(args.map))
    g = io.series_from_json(_load(args.g), B.dim)
    return io.letter_map_to_json(paths.delta_shift(B, g))


# ideal


@command("ideal", "basis", ["ideal_basis"], arg("gens"))
def _ibasis(args):
    gens, dim = io.generators_from_json(_load(args.gens), args.dim)
    closure = args.closure or "shuffle"
    return io.basis_to_json(ideals.ideal_basis(gens, closure, _level(args), dim))


@command("ideal", "member", ["member"], arg("basis"), arg("x"))
def _imember(args):
    basis = io.basis_from_json(_load(args.basis))
    x = io.tensor_from_json(_load(args.x), basis.dim)
    ok, coords = ideals.member(x, basis)
    out = {"member": ok, "coords": [io.frac_str(c) for c in coords] if ok else None}
    return _cert(out, basis.level)


@command("ideal", "shift", ["shift_ideal"], arg("basis"), arg("g"))
def _ishift(args):
    basis = io.basis_from_json(_load(args.basis))
    g = io.series_from_json(_load(args.g), basis.dim)
    return io.basis_to_json(ideals.shift_ideal(basis, g, args.side or "left"))


@command("ideal", "power", ["power_ideal"], arg("x"))
def _ipower(args):
    (x,) = _tensors(args, "x")
    return io.tensor_to_json(ideals.power_ideal(x, args.n))


@command("ideal", "multi", ["multi_path_ideal"], arg("x"))
def _imulti(args):
    (x,) = _tensors(args, "x")
    return io.tensor_to_json(ideals.multi_path_ideal(x, args.n))


@command("ideal", "invariant", ["invariant_projector"], arg("group"), arg("x"))
def _iinv(args):
    G = ideals.validate_group(io.group_from_json(_load(args.group)))
    x = io.tensor_from_json(_load(args.x), len(G[0]))
    return io.tensor_to_json(ideals.invariant_projector(G, x))


# variety


@command("variety", "member", ["in_variety"], arg("path"), arg("spec"))
def _vmember(args):
    X = io.path_from_json(_load(args.path))
    V = io.variety_spec_from_json(_load(args.spec))
    return _cert({"member": varieties.in_variety(X, V)}, V.level)


@command("variety", "rank", ["rank_test"], arg("path"), arg("spec"))
def _vrank(args):
    X = io.path_from_json(_load(args.path))
    spec = io.rank_spec_from_json(_load(args.spec))
    out = {"passes": varieties.rank_test(X, spec), "columns": spec.columns}
    return _cert(out, spec.level)


def _rank_wrapper(fn, needs_m):
    def handler(args):
        X = io.path_from_json(_load(args.path))
        level = _level(args)
        if needs_m:
            if args.m is None:
                raise ValidationError("--m is required", "m")
            ok = fn(X, args.m, level, args.columns)
        else:
            ok = fn(X, level, args.columns)
        return _cert({"passes": ok, "columns": args.columns}, level)

    return handler


command("variety", "subspace", ["subspace_test"], arg("path"))(_rank_wrapper(varieties.subspace_test, True))
command("variety", "hypersurface", ["hypersurface_test"], arg("path"))(_rank_wrapper(varieties.hypersurface_test, True))
command("variety", "sphere", ["sphere_or_hyperplane_test"], arg("path"))(
    _rank_wrapper(varieties.sphere_or_hyperplane_test, False)
)


@command("variety", "realize", ["realize_log_signature"], arg("lie"))
def _vrealize(args):
    lie = io.series_from_json(_load(args.lie), args.dim)
    X = varieties.realize_log_signature(lie, args.level)
    return _cert({"path": io.path_to_json(X)}, lie.level)


@command("variety", "shift", ["shift_ideal"], arg("spec"), arg("g"))
def _vshift(args):
    V = io.variety_spec_from_json(_load(args.spec))
    g = io.series_from_json(_load(args.g), V.dim)
    shifted = ideals.shift_ideal(V.basis(), g, args.side or "left")
    W = varieties.VarietySpec(shifted.rows, ideals.ClosureType.SPAN, V.level, V.dim)
    return _cert(io.variety_spec_to_json(W), V.level)


@command("variety", "power", ["power_ideal"], arg("spec"))
def _vpower(args):
    V = io.variety_spec_from_json(_load(args.spec))
    rows = [ideals.power_ideal(r, args.n) for r in V.basis().rows]
    W = varieties.VarietySpec(tuple(r for r in rows if not r.is_zero()), ideals.ClosureType.SPAN, V.level, V.dim)
    return _cert(io.variety_spec_to_json(W), V.level)


@command("variety", "loops", ["loops_variety"], arg("--k", type=int, required=True))
def _vloops(args):
    if not args.dim:
        raise ValidationError("--dim is required", "dim")
    return io.variety_spec_to_json(varieties.loops_variety(args.dim, args.k, args.level))


@command("variety", "increments", ["increments_variety"], arg("polys"))
def _vincr(args):
    polys = io.polynomials_from_json(_load(args.polys))
    return io.variety_spec_to_json(varieties.increments_variety(polys, args.level))


@command("variety", "linpoly", ["linear_signature_polynomial"], arg("x"))
def _vlinpoly(args):
    (x,) = _tensors(args, "x")
    return io.polynomial_to_json(varieties.linear_signature_polynomial(x))


# seeded generators


@command("gen", "path", ["random_path"], arg("--segments", type=int, default=3), arg("--degree", type=int, default=1))
def _gpath(args):
    rng = random.Random(args.seed)
    return io.path_to_json(random_path(rng, args.dim or 2, args.segments, args.degree))


@command("gen", "lie", ["random_lie"])
def _glie(args):
    rng = random.Random(args.seed)
    return io.series_to_json(random_lie(rng, args.dim or 2, args.level or 3))


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--level", type=int)
    common.add_argument("--dim", type=int, help="alphabet size (inferred from the input when omitted)")
    common.add_argument("--closure", choices=[c.value for c in ideals.ClosureType])
    common.add_argument("--n", type=int, default=2)
    common.add_argument("--m", type=int)
    common.add_argument("--side", choices=["left", "right"])
    common.add_argument("--columns", type=int, default=50)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--output", help="write JSON here instead of stdout")
    common.add_argument("--pretty", action="store_true")

    parser = argparse.ArgumentParser(prog="pathvariety", description=__doc__.splitlines()[0])
    groups = parser.add_subparsers(dest="group", required=True)
    subs = {}
    for (group, name), (fn, _ops, arguments) in COMMANDS.items():
        if group not in subs:
            subs[group] = groups.add_parser(group).add_subparsers(dest="command", required=True)
        p = subs[group].add_parser(name, parents=[common])
        for names, kw in arguments:
            p.add_argument(*names, **kw)
        p.set_defaults(handler=fn)
    return parser


def _emit(obj, args, stream):
    text = io.dumps(obj, pretty=getattr(args, "pretty", False))
    if getattr(args, "output", None):
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        stream.write(text)


def run(argv=None, stdout=None) -> int:
    stdout = stdout or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.handler(args)
    except ValidationError as exc:
        stdout.write(io.dumps({"error": str(exc), "field": exc.field}))
        return 2
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        stdout.write(io.dumps({"error": f"internal error: {type(exc).__name__}: {exc}"}))
        return 1
    _emit(result, args, stdout)
    return 0


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
