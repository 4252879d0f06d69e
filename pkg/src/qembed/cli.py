"""Command-line front end.

Exit codes: 0 when every check passes or a decision is reached, 1 when a
verification fails or the verdict is NotQuantumEmbeddable, 2 for usage and
parse errors.
"""
from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass

import numpy as np

from . import decide as D
from . import models as M
from .embedding import (Embedding, EmbeddingError, build_embedding, check_homomorphism,
                        reduce_to_minimal, verify_embedding)
from .jordan import check_jordan_axioms
from .linalg import herm_eigh
from .projector import (check_kadison, check_jordan_closure, check_cone_of_squares, choi, choi_to_json,
                        classify_decoherence, is_completely_positive, projector_from_embedding,
                        verify_projector)
from .report import VerificationReport

COMMANDS = ("embed", "verify", "reduce", "choi", "classify", "decide", "demo")
EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


@dataclass
class RunConfig:
    command: str
    model_path: str | None = None
    tol: float = 1e-9
    trials: int = 200
    seed: int = 42
    json_output: bool = False
    out_path: str | None = None

    def __post_init__(self):
        if self.command not in COMMANDS:
            raise ValueError(f"unknown command {self.command!r}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")


class UsageError(Exception):
    pass


def load_input(path: str) -> M.ModelSpec | Embedding:
    """Model file, or embedding file (an object with ``phi``/``psi``)."""
    try:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise M.ModelParseError(f"cannot read file: {exc.strerror}", 1, path) from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise M.ModelParseError(exc.msg, exc.lineno, path) from None
    if isinstance(data, dict) and "phi" in data:
        try:
            return Embedding.from_dict(data)
        except (KeyError, TypeError, ValueError) as exc:
            raise M.ModelParseError(f"invalid embedding file: {exc}", 1, path) from None
    return M.parse_model_data(data, text, path)


def _embedding_for(obj) -> Embedding:
    if isinstance(obj, Embedding):
        return obj
    if not M.is_catalog(obj):
        raise UsageError("polyhedral models have no embedding constructor; use the 'decide' command")
    return build_embedding(obj)


def _describe(obj) -> dict:
    model = obj.model if isinstance(obj, Embedding) else obj
    return M.model_to_dict(model)


def _cmd_embed(cfg, obj, rng):
    e = _embedding_for(obj)
    record = {"command": "embed", "model": _describe(obj), "n": e.n}
    return EXIT_OK, record, e.to_dict(), f"quantum dimension n = {e.n}"


def _verification_suite(e: Embedding, cfg: RunConfig, rng) -> list[VerificationReport]:
    reports = [verify_embedding(e, cfg.trials, cfg.tol, rng)]
    if not reports[0].passed:
        return reports
    e = reduce_to_minimal(e, cfg.tol, rng)
    if M.is_catalog(e.model):
        reports.append(check_jordan_axioms(e.model, cfg.trials, cfg.tol, rng))
        reports.append(check_homomorphism(e, cfg.trials, cfg.tol, rng))
    p = projector_from_embedding(e, check=False)
    reports.append(verify_projector(p, e, cfg.trials, cfg.tol, rng))
    reports.append(check_jordan_closure(p, e, cfg.trials, cfg.tol, rng))
    reports.append(check_kadison(p, cfg.trials, cfg.tol, rng))
    reports.append(check_cone_of_squares(p, e, cfg.trials, cfg.tol, rng))
    return reports


def _cmd_verify(cfg, obj, rng):
    e = _embedding_for(obj)
    reports = _verification_suite(e, cfg, rng)
    ok = all(r.passed for r in reports)
    record = {"command": "verify", "model": _describe(obj), "n": e.n, "passed": ok,
              "reports": [r.to_dict() for r in reports]}
    human = "\n\n".join(r.table() for r in reports) + f"\n\noverall: {'PASS' if ok else 'FAIL'}"
    return (EXIT_OK if ok else EXIT_FAIL), record, record, human


def _cmd_reduce(cfg, obj, rng):
    e = _embedding_for(obj)
    try:
        reduced = reduce_to_minimal(e, cfg.tol, rng)
    except EmbeddingError as exc:
        record = {"command": "reduce", "model": _describe(obj), "error": str(exc)}
        return EXIT_FAIL, record, record, f"reduction refused: {exc}"
    check = verify_embedding(reduced, cfg.trials, cfg.tol, rng)
    record = {"command": "reduce", "model": _describe(obj), "n_before": e.n, "n_after": reduced.n,
              "verified": check.passed}
    human = f"reduced Q_{e.n} -> Q_{reduced.n}; verification {'PASS' if check.passed else 'FAIL'}"
    return (EXIT_OK if check.passed else EXIT_FAIL), record, reduced.to_dict(), human


def _minimal(obj, cfg, rng) -> Embedding:
    e = _embedding_for(obj)
    return reduce_to_minimal(e, cfg.tol, rng, trials=min(cfg.trials, 50))


def _cmd_choi(cfg, obj, rng):
    e = _minimal(obj, cfg, rng)
    p = projector_from_embedding(e, check=False)
    c = choi(p)
    spectrum = herm_eigh(c)[0]
    cp, lam = is_completely_positive(p, cfg.tol)
    record = {"command": "choi", "model": _describe(obj), "n": e.n,
              "spectrum": [round(float(x), 12) + 0.0 for x in spectrum],
              "completely_positive": cp, "min_eigenvalue": lam}
    human = (f"Choi spectrum: {np.array2string(spectrum, precision=6, suppress_small=True)}\n"
             f"completely positive: {cp} (min eigenvalue {lam:.6g})")
    return EXIT_OK, record, {"n": e.n, "choi": choi_to_json(c)}, human


def _cmd_classify(cfg, obj, rng):
    e = _minimal(obj, cfg, rng)
    result = classify_decoherence(e, cfg.tol, min(cfg.trials, 50), rng)
    record = {"command": "classify", "model": _describe(obj), "n": e.n, **result.to_dict()}
    if result.physical:
        human = f"CPDecoherence: blocks {result.blocks} (multiplicities {result.multiplicities})"
    else:
        human = f"NotPhysical: min Choi eigenvalue {result.min_choi_eigenvalue:.6g}"
    return EXIT_OK, record, record, human


def _cmd_decide(cfg, obj, rng):
    model = obj.model if isinstance(obj, Embedding) else obj
    poly = M.as_polyhedral(model)
    if poly is None:
        raise UsageError("'decide' needs a polyhedral (or classical) model")
    decision = D.decide_polyhedral(poly, cfg.tol)
    record = {"command": "decide", "model": _describe(obj), **decision.to_dict()}
    human = decision.verdict + (f"({decision.n})" if decision.n is not None else
                                f": {decision.witness['ray_count']} extreme rays in dimension {poly.dim}")
    code = EXIT_FAIL if decision.verdict == D.NOT_EMBEDDABLE else EXIT_OK
    return code, record, record, human


def _cmd_demo(cfg, obj, rng):
    _, holevo = D.holevo_map(cfg.trials, min(cfg.tol, 1e-10), rng)
    cert = D.gbit_no_linear_psi_certificate(cfg.tol)
    decision = D.decide_polyhedral(M.gbit(), cfg.tol)
    ok = holevo.passed and cert.verdict == "NoLinearStateMap" and decision.verdict == D.NOT_EMBEDDABLE
    record = {"command": "demo", "holevo": holevo.to_dict(), "certificate": cert.to_dict(),
              "decision": decision.to_dict(), "passed": ok}
    human = "\n".join([
        holevo.table(),
        f"affine ranks: gbit states {cert.ranks['gbit_states']}, "
        f"classical deterministic {cert.ranks['classical_deterministic']}",
        f"pairwise distinguishers found: {sum(d['effect'] is not None for d in cert.distinguishers)}/6",
        f"certificate: {cert.verdict}",
        f"decision: {decision.verdict}",
    ])
    return (EXIT_OK if ok else EXIT_FAIL), record, record, human


_HANDLERS = {"embed": _cmd_embed, "verify": _cmd_verify, "reduce": _cmd_reduce, "choi": _cmd_choi,
             "classify": _cmd_classify, "decide": _cmd_decide, "demo": _cmd_demo}


def _dump(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2)


def run(cfg: RunConfig, stdout=None, stderr=None) -> int:
    stdout = sys.stdout if stdout is None else stdout
    stderr = sys.stderr if stderr is None else stderr
    rng = np.random.default_rng(cfg.seed)
    try:
        if cfg.command == "demo":
            obj = None
        elif cfg.model_path is None:
            raise UsageError(f"'{cfg.command}' needs a model file")
        else:
            obj = load_input(cfg.model_path)
        code, record, artifact, human = _HANDLERS[cfg.command](cfg, obj, rng)
    except M.ModelParseError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    except (UsageError, M.ModelError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_USAGE
    if cfg.out_path:
        with open(cfg.out_path, "w", encoding="utf-8") as fh:
            fh.write(_dump(artifact) + "\n")
    print(_dump(record) if cfg.json_output else human, file=stdout)
    return code


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--tol", type=float, default=1e-9, help="numerical tolerance (default 1e-9)")
    common.add_argument("--trials", type=int, default=200, help="random trials per check (default 200)")
    common.add_argument("--seed", type=int, default=42, help="RNG seed (default 42)")
    common.add_argument("--json", action="store_true", help="print the JSON record instead of a table")
    common.add_argument("--out", help="write the command's artifact (embedding, Choi matrix, report) here")

    parser = argparse.ArgumentParser(prog="qembed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)
    helps = {
        "embed": "build the standard embedding and print its quantum dimension",
        "verify": "verify an embedding, then the projector identities on its minimal reduction",
        "reduce": "restrict an embedding to the support of a full-rank embedded state",
        "choi": "print the Choi spectrum of the projector and the CP verdict",
        "classify": "classify the projector as a physical decoherence map or not",
        "decide": "decide whether a polyhedral model is classical or not quantum-embeddable",
        "demo": "run the gbit / Holevo non-embeddability certificate",
    }
    for name in COMMANDS:
        p = sub.add_parser(name, parents=[common], help=helps[name])
        if name == "demo":
            p.add_argument("model", nargs="?", help="ignored")
        else:
            p.add_argument("model", help="model JSON file (or embedding JSON file)")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        cfg = RunConfig(args.command, args.model, args.tol, args.trials, args.seed, args.json, args.out)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return run(cfg)


if __name__ == "__main__":
    sys.exit(main())
