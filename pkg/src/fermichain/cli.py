"""Command-line experiment runner.

    fermichain entropy-scan --config cfg.json --out results/
    fermichain predict      --config cfg.json
    fermichain fit          --config cfg.json
    fermichain oracle-check --config cfg.json
    fermichain rmt-check    --config cfg.json --seed 7

Exit codes: 0 success, 2 configuration error, 3 numerical-contract
violation, 4 degeneracy.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .asymptotics import DEFAULT_N_MIN, fit_entropy, predict
from .correlation import t_matrix_finite, truncate
from .entropy import EntropyCurve, entanglement_entropy, entropy_curve
from .errors import DegenerateGroundStateError, DegenerateSymbolError, ModelError, SpectralBoundError
from .model import ModelSpec, SymmetryClass, validate
from .oracle import build_hamiltonian_dense, ground_state, reduced_density_entropy
from .rmt import heine_szego_check
from .symbol import TrigSymbol, find_jumps, sign_symbol_fourier, sign_symbol_values, symbol_from_model

log = logging.getLogger("fermichain")


class ConfigError(ValueError):
    pass


class Experiment:
    """Parsed configuration document."""

    def __init__(self, raw: dict):
        self.raw = raw
        self.spec = None
        self.symbol = None
        if "model" in raw:
            self.spec = ModelSpec.from_dict(raw["model"])
            problems = validate(self.spec)
            if problems:
                raise ConfigError("; ".join(problems))
        elif "symbol" in raw:
            s = raw["symbol"]
            if "cosines" in s:
                self.symbol = TrigSymbol.from_cosines({int(k): float(v) for k, v in s["cosines"].items()})
            elif "coeffs" in s:
                self.symbol = TrigSymbol({int(k): float(v) for k, v in s["coeffs"].items()})
            else:
                raise ConfigError("symbol needs 'cosines' or 'coeffs'")
        else:
            raise ConfigError("config needs a 'model' or a 'symbol' section")
        cls = raw.get("class", self.spec.cls.value if self.spec else "Unitary")
        self.cls = SymmetryClass(cls)
        self.N_list = [int(n) for n in raw.get("N_list", [])]
        if any(b <= a for a, b in zip(self.N_list, self.N_list[1:])):
            raise ConfigError("N_list must be strictly increasing")
        conv = raw.get("convergence", {})
        self.M_factor = int(conv.get("M_factor", 8))
        self.doublings = int(conv.get("doublings", 2))
        if self.M_factor < 4:
            raise ConfigError("M_factor must be at least 4")
        fit = raw.get("fit", {})
        self.N_min = int(fit.get("N_min", DEFAULT_N_MIN))
        self.kappa_tol = float(fit.get("kappa_tol", 0.01))
        self.kappa_tilde_tol = float(fit.get("kappa_tilde_tol", 0.02))
        self.seed = int(raw.get("seed", 0))

    @property
    def source(self):
        return self.spec if self.spec is not None else self.symbol

    def dispersion(self) -> TrigSymbol:
        return symbol_from_model(self.spec) if self.spec is not None else self.symbol

    def hash(self) -> str:
        return hashlib.sha256(json.dumps(self.raw, sort_keys=True).encode()).hexdigest()


def _provenance(exp: Experiment) -> dict:
    return {"config_sha256": exp.hash(), "version": __version__}


def _write_json(path: Path, payload: dict) -> None:
    path.write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _require_N(exp: Experiment):
    if not exp.N_list:
        raise ConfigError("N_list is empty")


def cmd_entropy_scan(exp: Experiment, out: Path, threads: int, nats: bool) -> EntropyCurve:
    _require_N(exp)
    curve = entropy_curve(exp.source, exp.N_list, exp.M_factor, exp.doublings, threads)
    if nats:
        curve = EntropyCurve(curve.N, curve.E * np.log(2), curve.error * np.log(2), curve.cls, curve.meta)
    unit = "nats" if nats else "bits"
    header = {**_provenance(exp), "units": unit}
    curve.to_csv(out / "entropy_curve.csv", header)
    if nats:
        text = (out / "entropy_curve.csv").read_text().replace("E_P_bits", "E_P_nats")
        (out / "entropy_curve.csv").write_text(text)
    _write_json(out / "entropy_curve.json", {
        **header,
        "class": curve.cls,
        "meta": curve.meta,
        "points": [{"N": int(n), "E_P": float(e), "convergence_error": float(err)}
                   for n, e, err in zip(curve.N, curve.E, curve.error)],
    })
    return curve


def cmd_predict(exp: Experiment, out: Path) -> dict:
    jumps = find_jumps(exp.dispersion())
    payload = {**_provenance(exp), **predict(exp.cls, jumps).to_dict()}
    _write_json(out / "prediction.json", payload)
    return payload


def cmd_fit(exp: Experiment, out: Path, threads: int) -> dict:
    _require_N(exp)
    jumps = find_jumps(exp.dispersion())
    pred = predict(exp.cls, jumps)
    curve = entropy_curve(exp.source, exp.N_list, exp.M_factor, exp.doublings, threads)
    fit = fit_entropy(curve, exp.N_min)
    payload = {**_provenance(exp), **pred.to_dict(),
               "kappa_fit": fit.kappa_fit, "kappa_tilde_fit": fit.kappa_tilde_fit,
               "rms_residual": fit.rms_residual, "N_min": fit.N_min, "n_points": fit.n_points}
    payload["kappa_pass"] = abs(fit.kappa_fit - float(pred.kappa)) <= exp.kappa_tol
    if pred.kappa_tilde is not None:
        payload["kappa_tilde_pass"] = abs(fit.kappa_tilde_fit - pred.kappa_tilde) <= exp.kappa_tilde_tol
    _write_json(out / "fit.json", payload)
    return payload


def cmd_oracle_check(exp: Experiment, out: Path, nats: bool) -> list[tuple]:
    if exp.spec is None:
        raise ConfigError("oracle-check needs a 'model' section")
    spec = exp.spec
    state, gap = ground_state(build_hamiltonian_dense(spec))
    cm = t_matrix_finite(spec)
    Ns = exp.N_list or list(range(1, spec.M))
    scale = np.log(2) if nats else 1.0
    rows = []
    for n in Ns:
        a = reduced_density_entropy(state, n) * scale
        b = entanglement_entropy(truncate(cm, n)) * scale
        rows.append((n, a, b, abs(a - b)))
    unit = "nats" if nats else "bits"
    with open(out / "oracle_check.csv", "w") as fh:
        for key, value in {**_provenance(exp), "units": unit, "gap": repr(gap)}.items():
            fh.write(f"# {key}={value}\n")
        fh.write(f"N,oracle_{unit},pipeline_{unit},abs_diff\n")
        for n, a, b, d in rows:
            fh.write(f"{n},{a!r},{b!r},{d!r}\n")
    return rows


def cmd_rmt_check(exp: Experiment, out: Path, threads: int) -> dict:
    rmt = exp.raw.get("rmt", {})
    Ns = rmt.get("N", [2, 3, 4])
    Ns = [int(Ns)] if isinstance(Ns, int) else [int(n) for n in Ns]
    samples = int(rmt.get("samples", 100_000))
    jumps = find_jumps(exp.dispersion())

    def g(theta):
        return sign_symbol_values(jumps, theta)

    def coeffs(k):
        return float(sign_symbol_fourier(jumps, k))

    checks = [heine_szego_check(g, coeffs, n, samples, exp.seed, threads).to_dict() for n in Ns]
    payload = {**_provenance(exp), "R": jumps.R, "theta": list(jumps.theta), "checks": checks}
    _write_json(out / "rmt_check.json", payload)
    return payload


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="fermichain", description=__doc__.split("\n\n")[0])
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)
    for name in ("entropy-scan", "predict", "fit", "oracle-check", "rmt-check"):
        p = sub.add_parser(name)
        p.add_argument("--config", required=True, type=Path, help="JSON experiment configuration")
        p.add_argument("--seed", type=int, help="override the configured seed")
        p.add_argument("--threads", type=int, default=1)
        p.add_argument("--out", type=Path, default=Path("."), help="output directory")
        if name in ("entropy-scan", "oracle-check"):
            p.add_argument("--nats", action="store_true", help="report entropies in nats instead of bits")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    try:
        raw = json.loads(args.config.read_text())
        if "alpha" in raw and "model" not in raw:
            raw = {"model": raw}
        if args.seed is not None:
            raw["seed"] = args.seed
        exp = Experiment(raw)
        args.out.mkdir(parents=True, exist_ok=True)
        if args.command == "entropy-scan":
            curve = cmd_entropy_scan(exp, args.out, args.threads, args.nats)
            log.info("wrote %d points to %s", len(curve.N), args.out / "entropy_curve.csv")
        elif args.command == "predict":
            print(json.dumps(cmd_predict(exp, args.out), sort_keys=True))
        elif args.command == "fit":
            print(json.dumps(cmd_fit(exp, args.out, args.threads), sort_keys=True))
        elif args.command == "oracle-check":
            rows = cmd_oracle_check(exp, args.out, args.nats)
            log.info("max |difference| %.3e", max(r[3] for r in rows))
        else:
            print(json.dumps(cmd_rmt_check(exp, args.out, args.threads), sort_keys=True))
    except (OSError, json.JSONDecodeError, KeyError, ConfigError, ModelError) as exc:
        log.error("configuration error: %s", exc)
        return 2
    except (DegenerateGroundStateError, DegenerateSymbolError) as exc:
        log.error("degeneracy: %s", exc)
        return 4
    except (SpectralBoundError, ArithmeticError) as exc:
        log.error("numerical contract violated: %s", exc)
        return 3
    except ValueError as exc:
        log.error("configuration error: %s", exc)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
