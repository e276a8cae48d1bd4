"""Command line entry point ``lorentz-aut``.

Exit status: 0 on success, 1 on a domain error (JSON ``{"error", "detail"}``
on stdout), 2 on malformed input.
"""
from __future__ import annotations

import argparse
import sys
import warnings

from . import io, linalg
from .classify import classify, growth_probe
from .errors import LorentzError, SchemaError
from .groups import GroupSpec, explore
from .halphen import crucial_solver, generator_basis, translation_group_rank
from .translations import TranslationFrame, hyperbolic_from_pair, make_translation

SCHEMA = io.SCHEMA


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _doc(args) -> dict:
    return io.loads(_read(args.input))


def _config(args):
    if getattr(args, "fixture", None):
        if args.input != "-":
            raise UsageError("give either an input file or --fixture, not both")
        return io.load_fixture(args.fixture)
    return io.parse_config(_doc(args))


def cmd_classify(args) -> str:
    doc = _doc(args)
    lat, isos, kind = io.isometries_from_doc(doc)
    if kind == "generator_set":
        results = [classify(u).to_dict() for u in isos]
        return io.dumps({"schema": SCHEMA, "kind": "classification_list", "results": results})
    out = {"schema": SCHEMA, "kind": "classification"}
    out.update(classify(isos[0]).to_dict())
    return io.dumps(out)


def cmd_growth(args) -> str:
    doc = _doc(args)
    _, isos, _ = io.isometries_from_doc(doc)
    if not 0 <= args.index < len(isos):
        raise UsageError(f"--index {args.index} out of range (document has {len(isos)} isometries)")
    rep = growth_probe(isos[args.index], args.n_max)
    if args.format == "json":
        return io.dumps({
            "schema": SCHEMA, "kind": "growth",
            "samples": [{"n": n, "norm": str(v)} for n, v in zip(rep.ns, rep.norms)],
            "fitted_exponent": round(rep.fitted_exponent, 6),
            "fitted_class": rep.fitted_class,
        })
    lines = ["n,norm"] + [f"{n},{v}" for n, v in zip(rep.ns, rep.norms)]
    lines.append(f"# fitted_class={rep.fitted_class} fitted_exponent={rep.fitted_exponent:.6f}")
    return "\n".join(lines) + "\n"


def _translation(obj, lat, where):
    io.check_fields(obj, ("frame", "zeta"), ("frame", "zeta"), where)
    theta, eta = io.parse_frame_spec(obj["frame"], f"{where}.frame")
    frame = TranslationFrame(lat, theta, eta)
    return make_translation(frame, io.rational_vector(obj["zeta"], f"{where}.zeta"))


def cmd_translate(args) -> str:
    doc = _doc(args)
    io.check_fields(doc, ("schema", "kind", "lattice", "frame", "zeta"), ("lattice", "frame", "zeta"))
    lat = io.parse_lattice(doc["lattice"])
    t = _translation({"frame": doc["frame"], "zeta": doc["zeta"]}, lat, "document")
    return io.dumps({
        "schema": SCHEMA, "kind": "translation",
        "lattice": io.lattice_dict(lat),
        "frame": {"theta": io.str_vector(t.frame.theta), "eta": io.str_vector(t.frame.eta)},
        "zeta": io.str_vector(t.zeta),
        "a": str(t.a),
        "integral": t.integral,
        "integral_power": 1 if t.integral else t.integral_power(),
        "matrix": io.str_matrix(t.matrix),
    })


def cmd_wazomba(args) -> str:
    doc = _doc(args)
    io.check_fields(doc, ("schema", "kind", "lattice", "u", "v"), ("lattice", "u", "v"))
    lat = io.parse_lattice(doc["lattice"])
    u = _translation(doc["u"], lat, "u")
    v = _translation(doc["v"], lat, "v")
    w = hyperbolic_from_pair(u, v)
    out = {
        "schema": SCHEMA, "kind": "hyperbolic_witness",
        "word": w.word,
        "tag": w.tag,
        "integral": linalg.is_integral(w.matrix),
        "char_poly": [str(c) for c in w.char_poly],
        "spectral_radius_approx": w.spectral_radius_approx,
        "other_word_hyperbolic": w.other_hyperbolic,
        "matrix": io.str_matrix(w.matrix),
    }
    return io.dumps(out)


def cmd_group(args) -> str:
    doc = _doc(args)
    io.check_fields(doc, ("schema", "kind", "lattice", "generators", "word_bound"),
                    ("lattice", "generators", "word_bound"))
    lat = io.parse_lattice(doc["lattice"])
    gens = doc["generators"]
    if not isinstance(gens, list) or not gens:
        raise SchemaError("generators must be a nonempty array")
    isos = []
    for k, g in enumerate(gens):
        # plain matrices or {"matrix": ...} objects as emitted by halphen-gen
        if isinstance(g, dict):
            io.check_fields(g, ("alpha", "matrix"), ("matrix",), f"generators[{k}]")
            g = g["matrix"]
        isos.append(io.parse_isometry(g, lat, f"generators[{k}]"))
    bound = doc["word_bound"]
    if isinstance(bound, bool) or not isinstance(bound, int) or bound < 1:
        raise SchemaError("word_bound must be a positive integer")
    rep = explore(GroupSpec(lat, tuple(isos), bound))
    out = {"schema": SCHEMA, "kind": "group_report"}
    out.update(rep.to_dict())
    return io.dumps(out)


def cmd_halphen_rank(args) -> str:
    cfg = _config(args)
    rk_n, rk_g = translation_group_rank(cfg.model, cfg)
    return io.dumps({"schema": SCHEMA, "kind": "halphen_rank", "rkN": rk_n, "rkG": rk_g,
                     "sigma": cfg.sigma})


def cmd_halphen_gen(args) -> str:
    cfg = _config(args)
    with warnings.catch_warnings(record=True):
        warnings.simplefilter("always")
        gens = generator_basis(cfg.model, cfg)
    out = {
        "schema": SCHEMA, "kind": "generator_set",
        "lattice": io.lattice_dict(cfg.model.lattice),
        "m": cfg.model.m,
        "config": cfg.name,
        "rank_g": len(gens),
        "generators": [{"alpha": io.str_vector(g.alpha), "matrix": io.str_matrix(g.matrix.matrix)}
                       for g in gens],
    }
    if not gens:
        out["notice"] = "translation group has rank 0; the automorphism group is finite"
    return io.dumps(out)


def cmd_halphen_crucial(args) -> str:
    if args.divisor is None:
        doc = _doc(args)
        io.check_fields(doc, ("schema", "kind", "config", "divisor"), ("config", "divisor"))
        cfg_obj = doc["config"]  # inline fiber config or a bundled fixture name
        if isinstance(cfg_obj, str):
            cfg = io.load_fixture(cfg_obj)
        elif isinstance(cfg_obj, dict):
            cfg = io.parse_config({"schema": SCHEMA, **cfg_obj})
        else:
            raise SchemaError("config must be an object or a fixture name")
        d = io.int_vector(doc["divisor"], "divisor")
    else:
        cfg = _config(args)
        try:
            d = linalg.int_vector([int(x) for x in args.divisor.split(",")])
        except ValueError:
            raise SchemaError("--divisor must be comma-separated integers") from None
    res = crucial_solver(cfg.model, cfg, d)
    return io.dumps({"schema": SCHEMA, "kind": "component_correction", "N": res.N,
                     "coefficients": [str(c) for c in res.coefficients], "S": io.str_vector(res.S)})


def cmd_validate_config(args) -> str:
    cfg = _config(args)
    return io.dumps({"schema": SCHEMA, "kind": "validation", "valid": True, "name": cfg.name,
                     "m": cfg.model.m, "mus": cfg.mus, "sigma": cfg.sigma})


COMMANDS = {
    "classify": (cmd_classify, "classify an isometry (or every generator of a generator set)"),
    "growth": (cmd_growth, "sample ||u^n|| and fit the growth class"),
    "translate": (cmd_translate, "build a parabolic translation from a frame and zeta"),
    "wazomba": (cmd_wazomba, "hyperbolic product of translations along two rays"),
    "group": (cmd_group, "bounded exploration of a finitely generated group"),
    "halphen-rank": (cmd_halphen_rank, "ranks of N and of the translation group"),
    "halphen-gen": (cmd_halphen_gen, "generator matrices of the translation group"),
    "halphen-crucial": (cmd_halphen_crucial, "least N and S with (N D - S).E = 0 on components"),
    "validate-config": (cmd_validate_config, "check a fiber configuration"),
}


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="lorentz-aut", description="Exact isometry computations on Lorentzian lattices.")
    sub = p.add_subparsers(dest="command", required=True)
    for name, (_, help_text) in COMMANDS.items():
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("input", nargs="?", default="-", help="input JSON file (default: stdin)")
        if name.startswith("halphen") or name == "validate-config":
            sp.add_argument("--fixture", help=f"use a bundled configuration ({', '.join(io.fixture_names())})")
        if name == "growth":
            sp.add_argument("--n-max", type=int, default=64)
            sp.add_argument("--index", type=int, default=0, help="which isometry of a generator set")
            sp.add_argument("--format", choices=("csv", "json"), default="csv")
        if name == "halphen-crucial":
            sp.add_argument("--divisor", help="comma-separated coordinates of D")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    func = COMMANDS[args.command][0]
    try:
        text = func(args)
    except (SchemaError, UsageError) as exc:
        code = getattr(exc, "code", "usage")
        sys.stdout.write(io.dumps({"error": code, "detail": str(exc)}))
        return 2
    except LorentzError as exc:
        sys.stdout.write(io.dumps({"error": exc.code, "detail": exc.detail}))
        return 1
    except ValueError as exc:
        # growth n_max and similar argument checks
        sys.stdout.write(io.dumps({"error": "invalid_argument", "detail": str(exc)}))
        return 2
    sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
