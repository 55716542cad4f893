"""harmotop: command-line front end for the spectral laboratory.

    harmotop counting    --d 2 --symbol step:b=1,c=0.5 --lambda 1e-2
    harmotop asymptotics --d 2 --symbol power:a=1,gamma=1 --model power --lnlambda -12:-4
    harmotop spectrum    --d 2 --symbol power:a=1,gamma=1 --K 10
    harmotop selftest

Symbol descriptors:
    step:b=<f>,c=<f>           power:a=<f>,gamma=<f>
    sampled:@<path.csv>        (two columns r,v)
    sum:[<desc>; <desc> ...]   general:@<path.json>

Outputs are deterministic for a fixed configuration (reductions run in a
fixed order regardless of --threads).  Exit codes: 0 success, 2 malformed
configuration or descriptor, 3 numerical certification failure.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

import numpy as np

from . import boundary_reduction as br
from . import galerkin_toeplitz as gt
from . import kernel_berezin as kb
from . import krein_counting as kc
from . import radial_toeplitz as rt
from .errors import QuadratureDivergenceError, TailNotCertifiedError
from .grids import TruncationSpec
from .symbols import GeneralSymbol, Power, Sampled, Step, SymbolSum, radial_sup

FULL = ".17g"


class SymbolSyntaxError(ValueError):
    def __init__(self, text: str, pos: int, message: str):
        super().__init__(f"symbol descriptor error at position {pos}: {message}\n  {text}\n  {' ' * pos}^")
        self.pos = pos


def _parse_fields(text: str, body: str, offset: int, keys: tuple[str, ...]) -> dict[str, float]:
    out: dict[str, float] = {}
    pos = offset
    for item in body.split(","):
        if "=" not in item:
            raise SymbolSyntaxError(text, pos, f"expected <key>=<value>, got {item!r}")
        key, _, val = item.partition("=")
        if key not in keys:
            raise SymbolSyntaxError(text, pos, f"unknown field {key!r}; expected one of {keys}")
        try:
            out[key] = float(val)
        except ValueError:
            raise SymbolSyntaxError(text, pos + len(key) + 1, f"not a number: {val!r}") from None
        pos += len(item) + 1
    missing = [k for k in keys if k not in out]
    if missing:
        raise SymbolSyntaxError(text, offset, f"missing fields: {missing}")
    return out


def _split_top_level(body: str) -> list[tuple[int, str]]:
    parts = []
    depth = 0
    start = 0
    for i, ch in enumerate(body):
        if ch == "[":
            depth += 1
        elif ch == "]":
            depth -= 1
        elif ch == ";" and depth == 0:
            parts.append((start, body[start:i]))
            start = i + 1
    parts.append((start, body[start:]))
    return parts


def parse_symbol(text: str, base_dir: str | Path = "."):
    """Parse a symbol descriptor; raises SymbolSyntaxError with a position."""
    text = text.strip()
    head, sep, body = text.partition(":")
    if not sep:
        raise SymbolSyntaxError(text, len(text), "missing ':' after the symbol kind")
    offset = len(head) + 1
    if head == "step":
        f = _parse_fields(text, body, offset, ("b", "c"))
        try:
            return Step(f["b"], f["c"])
        except ValueError as exc:
            raise SymbolSyntaxError(text, offset, str(exc)) from None
    if head == "power":
        f = _parse_fields(text, body, offset, ("a", "gamma"))
        try:
            return Power(f["a"], f["gamma"])
        except ValueError as exc:
            raise SymbolSyntaxError(text, offset, str(exc)) from None
    if head == "sampled":
        if not body.startswith("@"):
            raise SymbolSyntaxError(text, offset, "expected sampled:@<path.csv>")
        path = Path(base_dir) / body[1:]
        rows = [
            line.split(",")
            for line in path.read_text().splitlines()
            if line.strip() and not line.lstrip().startswith("#")
        ]
        try:
            r = [float(row[0]) for row in rows]
            v = [float(row[1]) for row in rows]
            return Sampled(r, v)
        except (IndexError, ValueError) as exc:
            raise SymbolSyntaxError(text, offset + 1, f"bad sample file {path}: {exc}") from None
    if head == "sum":
        if not (body.startswith("[") and body.endswith("]")):
            raise SymbolSyntaxError(text, offset, "expected sum:[<desc>; <desc> ...]")
        parts = []
        for rel, chunk in _split_top_level(body[1:-1]):
            chunk = chunk.strip()
            if not chunk:
                raise SymbolSyntaxError(text, offset + 1 + rel, "empty summand")
            try:
                parts.append(parse_symbol(chunk, base_dir))
            except SymbolSyntaxError as exc:
                raise SymbolSyntaxError(text, offset + 1 + rel + exc.pos, str(exc).splitlines()[0]) from None
        if any(not isinstance(p, (Step, Power, Sampled, SymbolSum)) for p in parts):
            raise SymbolSyntaxError(text, offset, "sums may only combine radial symbols")
        return SymbolSum(parts)
    if head == "general":
        if not body.startswith("@"):
            raise SymbolSyntaxError(text, offset, "expected general:@<path.json>")
        path = Path(base_dir) / body[1:]
        try:
            payload = json.loads(path.read_text())
            spec = TruncationSpec(
                max_degree=int(payload["K"]), n_r=int(payload["n_r"]), n_ang=int(payload["n_ang"])
            )
            return gt.TabulatedSymbol(
                d=int(payload["d"]),
                spec=spec,
                values=np.asarray(payload["values"], dtype=float),
                boundary_gamma=payload.get("gamma"),
                boundary_trace_values=(
                    np.asarray(payload["a0"], dtype=float) if "a0" in payload else None
                ),
            )
        except (KeyError, ValueError, OSError, json.JSONDecodeError) as exc:
            raise SymbolSyntaxError(text, offset + 1, f"bad symbol file {path}: {exc}") from None
    raise SymbolSyntaxError(text, 0, f"unknown symbol kind {head!r}")


def _parse_range(text: str, name: str, want_count: bool = False) -> np.ndarray:
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise ValueError(f"--{name} expects LO:HI[:N], got {text!r}")
    try:
        lo, hi = float(parts[0]), float(parts[1])
        n = int(parts[2]) if len(parts) == 3 else max(4, round(abs(hi - lo)) + 1)
    except ValueError:
        raise ValueError(f"--{name} expects numeric LO:HI[:N], got {text!r}") from None
    if n < 2:
        raise ValueError(f"--{name} needs at least 2 points, got {n}")
    if want_count and len(parts) != 3:
        raise ValueError(f"--{name} requires LO:HI:N")
    return np.linspace(lo, hi, n)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="harmotop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, symbol_required=True):
        p.add_argument("--d", type=int, default=2, help="space dimension (default 2)")
        if symbol_required:
            p.add_argument("--symbol", required=True, help="symbol descriptor")
        p.add_argument("--K", type=int, default=None, help="truncation degree")
        p.add_argument("--nr", type=int, default=None, help="radial quadrature order")
        p.add_argument("--nang", type=int, default=None, help="angular grid size")
        p.add_argument("--output", default=None, help="output path (default stdout)")
        p.add_argument("--format", choices=("csv", "json"), default="csv")
        p.add_argument("--threads", type=int, default=1)

    p = sub.add_parser("spectrum", help="eigenvalues with multiplicities")
    common(p)
    p.add_argument("--matrix-output", default=None, help="dump the section matrix as CSV")

    p = sub.add_parser("counting", help="eigenvalue counting function")
    common(p)
    p.add_argument("--lambda", dest="lam", type=float, default=None)
    p.add_argument("--lnlambda", default=None, help="log-threshold grid LO:HI[:N]")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")

    p = sub.add_parser("asymptotics", help="fit counting law coefficients")
    common(p)
    p.add_argument("--lnlambda", required=True, help="log-threshold grid LO:HI[:N]")
    p.add_argument("--model", choices=("power", "log-power"), required=True)
    p.add_argument("--exponent", type=float, default=None, help="pin the model exponent")
    p.add_argument("--sign", choices=("plus", "minus"), default="plus")

    p = sub.add_parser("berezin", help="Berezin transform along a radius")
    common(p)
    p.add_argument("--radii", default="0,0.25,0.5,0.75,0.9,0.95")

    p = sub.add_parser("schatten", help="Schatten norms")
    common(p)
    p.add_argument("--p", type=float, required=True)
    p.add_argument("--weak", action="store_true")

    p = sub.add_parser("boundary", help="boundary reduction diagnostics")
    common(p)
    p.add_argument("--E", dest="e_grid", default=None, help="energy grid LO:HI:N for the inverse-power counting fit")

    p = sub.add_parser("krein", help="sandwich bounds for the perturbed counting functions")
    common(p)
    p.add_argument("--lnlambda", default=None, help="log-threshold grid LO:HI[:N]")
    p.add_argument("--E", dest="e_grid", default=None, help="energy grid LO:HI:N for the complementary-spectrum counting")
    p.add_argument("--eps", type=float, default=None, help="fixed eps (default lambda^theta)")
    p.add_argument("--lam1", type=float, default=10.0)
    p.add_argument("--vsup", type=float, default=None)

    p = sub.add_parser("selftest", help="run the built-in invariant suite")
    p.add_argument("--output", default=None)
    p.add_argument("--format", choices=("csv", "json"), default="csv")

    return parser


def _spec_for(args, default_degree: int) -> TruncationSpec:
    k = args.K if args.K is not None else default_degree
    base = TruncationSpec.for_degree(k)
    return TruncationSpec(
        max_degree=k,
        n_r=args.nr if args.nr is not None else base.n_r,
        n_ang=args.nang if args.nang is not None else base.n_ang,
    )


def _pmap(fn, items, threads: int):
    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _config_dict(args) -> dict:
    cfg = {k: v for k, v in vars(args).items() if v is not None and k != "func"}
    return cfg


MU_FORMULA = "mu_k = (2k+d) * int_0^1 v(r) r^(2k+d-1) dr"
COUNTING_FORMULA = "n_plus(lambda) = #{eigenvalues > lambda} = M_(nu-1), nu = #{k : mu_k > lambda}"


def _cmd_spectrum(args):
    symbol = parse_symbol(args.symbol)
    if isinstance(symbol, (Step, Power, Sampled, SymbolSum)):
        k = args.K if args.K is not None else 12
        spectrum = rt.radial_spectrum(symbol, args.d, k)
    else:
        spec = _spec_for(args, symbol.spec.max_degree if isinstance(symbol, gt.TabulatedSymbol) else 12)
        spectrum = gt.spectrum(symbol, args.d, spec)
    if args.matrix_output:
        spec = _spec_for(args, spectrum.max_degree)
        gt.write_matrix_csv(args.matrix_output, gt.assemble(symbol, args.d, spec), args.d, spec.max_degree)
    rows = [
        {"index": i, "eigenvalue": e, "multiplicity": m}
        for i, (e, m) in enumerate(spectrum.entries)
    ]
    meta = {
        "columns": ["index", "eigenvalue", "multiplicity"],
        "comments": [
            f"provenance={spectrum.provenance} max_degree={spectrum.max_degree} total={spectrum.total_count}",
            f"eigenvalue: {MU_FORMULA}" if spectrum.provenance == "exact-radial" else "eigenvalue: finite-section eigenvalues of the compression",
        ],
        "formulas": [MU_FORMULA],
    }
    return rows, meta


def _cmd_counting(args):
    symbol = parse_symbol(args.symbol)
    if not isinstance(symbol, (Step, Power, Sampled, SymbolSum)):
        raise ValueError("counting requires a radial symbol; use spectrum for general symbols")
    sign = 1 if args.sign == "plus" else -1
    if (args.lam is None) == (args.lnlambda is None):
        raise ValueError("provide exactly one of --lambda, --lnlambda")
    if args.lam is not None:
        if args.lam <= 0.0:
            raise ValueError(f"--lambda must be positive, got {args.lam}")
        lam_grid = [args.lam]
        ln_grid = [math.log(args.lam)]
    else:
        ln_grid = [float(x) for x in _parse_range(args.lnlambda, "lnlambda")]
        # display column only; counting itself stays in the log domain and
        # the emitted value never goes sub-normal
        lam_grid = [math.exp(l) if l > -700.0 else 0.0 for l in ln_grid]
    counts = _pmap(lambda l: rt.counting(symbol, args.d, sign=sign, ln_lam=l), ln_grid, args.threads)
    rows = [
        {"lambda": lam, "ln_lambda": l, "n": int(n)}
        for lam, l, n in zip(lam_grid, ln_grid, counts)
    ]
    meta = {
        "columns": ["lambda", "ln_lambda", "n"],
        "comments": [f"n: {COUNTING_FORMULA} (sign={args.sign})"],
        "formulas": [COUNTING_FORMULA, MU_FORMULA],
    }
    return rows, meta


def _cmd_asymptotics(args):
    symbol = parse_symbol(args.symbol)
    if not isinstance(symbol, (Step, Power, Sampled, SymbolSum)):
        raise ValueError("asymptotics requires a radial symbol")
    sign = 1 if args.sign == "plus" else -1
    ln_grid = np.sort(np.unique(_parse_range(args.lnlambda, "lnlambda")))[::-1]
    fit = rt.asymptotic_fit(
        symbol, args.d, model=args.model, exponent=args.exponent, sign=sign, ln_lam_grid=ln_grid
    )
    if args.model == "power":
        model_vals = fit.coefficient * np.exp(-fit.exponent * fit.ln_lam)
        law = "n ~ C * lambda^(-e)"
    else:
        model_vals = fit.coefficient * (-fit.ln_lam) ** fit.exponent
        law = "n ~ C * |ln lambda|^e"
    rows = [
        {"ln_lambda": float(l), "n": int(n), "model": float(m)}
        for l, n, m in zip(fit.ln_lam, fit.counts, model_vals)
    ]
    meta = {
        "columns": ["ln_lambda", "n", "model"],
        "comments": [
            f"fit {law}: coefficient={fit.coefficient:{FULL}} exponent={fit.exponent:{FULL}} residual_rms={fit.residual_rms:{FULL}}",
        ],
        "formulas": [law, COUNTING_FORMULA],
        "fit": {
            "coefficient": fit.coefficient,
            "exponent": fit.exponent,
            "residual_rms": fit.residual_rms,
        },
    }
    return rows, meta


def _cmd_berezin(args):
    symbol = parse_symbol(args.symbol)
    try:
        radii = [float(x) for x in args.radii.split(",") if x.strip()]
    except ValueError:
        raise ValueError(f"--radii expects a comma-separated list, got {args.radii!r}") from None
    k = args.K if args.K is not None else 12
    spec = _spec_for(args, k) if not isinstance(symbol, (Step, Power, Sampled, SymbolSum)) else None
    x0 = np.zeros(args.d)

    def at(r: float) -> float:
        x = x0.copy()
        x[0] = r
        return kb.berezin_transform(symbol, args.d, x, k, spec=spec)

    vals = _pmap(at, radii, args.threads)
    rows = [{"radius": r, "berezin": v} for r, v in zip(radii, vals)]
    meta = {
        "columns": ["radius", "berezin"],
        "comments": ["berezin: B[V](x) = int R(x,y)^2 V(y) dy / R(x,x), kernel truncated at max_degree"],
        "formulas": ["B[V](x) = int R(x,y)^2 V(y) dy / R(x,x)"],
    }
    return rows, meta


def _cmd_schatten(args):
    symbol = parse_symbol(args.symbol)
    if isinstance(symbol, (Step, Power, Sampled, SymbolSum)):
        value = rt.schatten_radial(symbol, args.d, args.p, weak=args.weak, k_stop=args.K)
        route = "radial-series"
    else:
        spec = _spec_for(args, symbol.spec.max_degree if isinstance(symbol, gt.TabulatedSymbol) else 12)
        value = gt.schatten_galerkin(gt.spectrum(symbol, args.d, spec), args.p, weak=args.weak)
        route = "galerkin"
    rows = [{"p": args.p, "weak": int(args.weak), "value": value, "route": route}]
    law = "||T||_(p,w) = sup_j j^(1/p) s_j" if args.weak else "||T||_p = (sum_j s_j^p)^(1/p)"
    meta = {"columns": ["p", "weak", "value", "route"], "comments": [f"value: {law}"], "formulas": [law]}
    return rows, meta


def _cmd_boundary(args):
    symbol = parse_symbol(args.symbol)
    k_max = args.K if args.K is not None else 12
    rows = []
    radial = isinstance(symbol, (Step, Power, Sampled, SymbolSum))
    for k in range(k_max + 1):
        row = {
            "k": k,
            "gram_eigenvalue": br.extension_gram_eigenvalue(args.d, k),
            "dtn_eigenvalue": br.dtn_eigenvalue(args.d, k),
        }
        if radial:
            row["reduced_diagonal"] = rt.radial_eigenvalue(symbol, args.d, k)
        rows.append(row)
    meta = {
        "columns": list(rows[0].keys()),
        "comments": [
            "gram_eigenvalue: <G psi_k, G psi_k> = 1/(2k+d); dtn_eigenvalue: normal derivative order k",
        ],
        "formulas": ["J psi_k = psi_k/(2k+d)", "D psi_k = k psi_k"],
    }
    if isinstance(symbol, Power):
        est = br.symbol_order_check(symbol.gamma, symbol.a, args.d, 10_000)
        target = br.principal_symbol_value(symbol.gamma, symbol.a)
        meta["comments"].append(
            f"principal symbol check: k^gamma mu_k -> {est:{FULL}} (target 2^-gamma Gamma(gamma+1) a = {target:{FULL}})"
        )
        meta["fit"] = {"symbol_order_estimate": est, "principal_symbol": target}
        if args.e_grid is not None:
            e_grid = _parse_range(args.e_grid, "E", want_count=True)
            fit = br.inverse_power_weyl_fit(symbol.gamma, symbol.a, args.d, e_grid)
            rows = [
                {"E": float(e), "count": int(n)} for e, n in zip(e_grid, fit.counts)
            ]
            meta = {
                "columns": ["E", "count"],
                "comments": [
                    "count: degrees with mu_k^(-1/gamma) < E, multiplicities included",
                    f"fit count ~ C E^(d-1): coefficient={fit.coefficient:{FULL}}",
                ],
                "formulas": ["count(E) ~ C E^(d-1)"],
                "fit": {"coefficient": fit.coefficient, "exponent": fit.exponent},
            }
    elif args.e_grid is not None:
        raise ValueError("--E requires a power-type symbol in the boundary command")
    return rows, meta


def _cmd_krein(args):
    symbol = parse_symbol(args.symbol)
    if not isinstance(symbol, (Step, Power, Sampled, SymbolSum)):
        raise ValueError("krein requires a radial symbol")
    if (args.lnlambda is None) == (args.e_grid is None):
        raise ValueError("provide exactly one of --lnlambda, --E")
    if args.e_grid is not None:
        e_grid = _parse_range(args.e_grid, "E", want_count=True)
        exponent, coefficient = kc.weyl_L_fit(e_grid)
        rows = [{"E": float(e), "count": kc.disk_counting(float(e))} for e in e_grid]
        meta = {
            "columns": ["E", "count"],
            "comments": [
                "count: disk buckling values below E (multiplicity counted)",
                f"fit count ~ C E^(d/2): exponent={exponent:{FULL}} coefficient={coefficient:{FULL}}",
            ],
            "formulas": ["count(E) ~ C E^(d/2), values j_(k+1,m)^2"],
            "fit": {"exponent": exponent, "coefficient": coefficient},
        }
        return rows, meta
    ln_grid = [float(x) for x in _parse_range(args.lnlambda, "lnlambda")]
    v_sup = args.vsup if args.vsup is not None else radial_sup(symbol)
    gamma = symbol.gamma if isinstance(symbol, Power) else None
    theta = 2.0 * (args.d - 1) / (gamma * (args.d + 2)) if gamma else 0.5

    def one(ln_lam: float) -> dict:
        lam = math.exp(ln_lam)
        eps = args.eps if args.eps is not None else min(0.5, lam**theta)
        n_plus = lambda s: rt.counting(symbol, args.d, s)
        remainder = lambda e: kc.remainder_model(e, v_sup, args.lam1, args.d)
        box = kc.sandwich_minus(kc.SandwichInput(lam=lam, eps=eps, n_plus=n_plus, remainder=remainder))
        row = {"lambda": lam, "eps": eps, "lower": box.lower, "upper": box.upper}
        if gamma:
            row["envelope_main"] = kc.counting_envelope(args.d, gamma, symbol.a, lam).main
        return row

    rows = _pmap(one, ln_grid, args.threads)
    meta = {
        "columns": list(rows[0].keys()),
        "comments": [
            "bounds: n_plus(lambda) <= N_minus(lambda) <= n_plus((1-eps) lambda) + remainder(eps)",
            f"remainder: complementary-spectrum counting below lam1 + sup V / eps (lam1={args.lam1})",
        ],
        "formulas": ["n_plus(lambda) <= N_minus(lambda) <= n_plus((1-eps) lambda) + remainder(eps)"],
    }
    return rows, meta


def _selftest_checks():
    from .harmonic_basis import cumulative_multiplicity, multiplicity
    from .numerics import bessel_j_zero, beta, gauss_legendre, symmetric_eigen

    checks = []

    rule = gauss_legendre(16, 0.0, 1.0)
    checks.append(("quadrature-moments", abs(rule.integrate(lambda r: r**9) - 0.1) < 1e-14))
    checks.append(("beta-symmetry", abs(beta(2.0, 3.0) - 1.0 / 12.0) < 1e-14))
    checks.append(("bessel-first-zero", abs(bessel_j_zero(0, 1) - 2.4048255577) < 1e-9))
    ok = all(
        cumulative_multiplicity(d, k) - cumulative_multiplicity(d, k - 1) == multiplicity(d, k)
        for d in range(2, 7)
        for k in range(0, 60)
    )
    checks.append(("multiplicity-sums", ok))
    eigs = symmetric_eigen(np.diag([3.0, 1.0, 2.0]))
    checks.append(("eigensolver-diag", bool(np.allclose(eigs, [1.0, 2.0, 3.0]))))

    v = Step(1.0, 0.5)
    mu_err = max(
        abs(rt.radial_eigenvalue(v, 2, k) - rt.step_eigenvalue(1.0, 0.5, 2, k))
        for k in range(12)
    )
    checks.append(("radial-eigenvalue-closed-form", mu_err < 1e-12))
    checks.append(("counting-step-oracle", rt.counting(v, 2, 0.1) == 1 and rt.counting(v, 2, 0.01) == 5))

    spec = TruncationSpec.for_degree(8)
    A = gt.assemble(v, 2, spec)
    checks.append(("galerkin-radial-diagonal", float(np.max(np.abs(A - np.diag(np.diag(A))))) < 1e-10))
    Vgen = GeneralSymbol(lambda p: 0.5 * (1.0 + p[:, 0]))
    R = br.reduced_operator(Vgen, 2, spec).as_matrix()
    G = gt.assemble(Vgen, 2, spec)
    checks.append(("boundary-reduction-identity", float(np.max(np.abs(R - G))) < 1e-10))
    tr = gt.spectrum(Vgen, 2, spec).trace()
    checks.append(("trace-identity", abs(tr - kb.density_integral(Vgen, 2, 8)) < 1e-8 * abs(tr)))

    rng = np.random.default_rng(0)
    ok = True
    for _ in range(5):
        X = rng.normal(size=(20, 20))
        Y = rng.normal(size=(20, 20))
        ok = ok and gt.weyl_check(0.5 * (X + X.T), 0.5 * (Y + Y.T), trials=40, rng=1)
    checks.append(("weyl-inequalities", ok))
    checks.append(("berezin-normalisation", abs(kb.berezin_transform(Sampled([0.0, 0.5], [1.0, 1.0]), 2, [0.3, 0.0], 10) - 1.0) < 1e-12))
    return checks


def _cmd_selftest(args):
    checks = _selftest_checks()
    rows = [{"check": name, "status": "PASS" if ok else "FAIL"} for name, ok in checks]
    meta = {
        "columns": ["check", "status"],
        "comments": [f"{sum(ok for _, ok in checks)}/{len(checks)} checks passed"],
        "formulas": [],
        "failed": sum(not ok for _, ok in checks),
    }
    return rows, meta


def _format_cell(value) -> str:
    if isinstance(value, bool):
        return str(int(value))
    if isinstance(value, float):
        return format(value, FULL)
    return str(value)


def emit(rows, meta, args) -> None:
    if args.format == "json":
        payload = {
            "config": _config_dict(args),
            "results": rows,
            "provenance": {"equations": meta.get("formulas", []), "comments": meta.get("comments", [])},
        }
        if "fit" in meta:
            payload["fit"] = meta["fit"]
        text = json.dumps(payload, indent=2, default=float) + "\n"
    else:
        lines = [f"# harmotop {args.command}"]
        lines += [f"# {c}" for c in meta.get("comments", [])]
        lines.append("# columns: " + ",".join(meta["columns"]))
        for row in rows:
            lines.append(",".join(_format_cell(row.get(c, "")) for c in meta["columns"]))
        text = "\n".join(lines) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)


_COMMANDS = {
    "spectrum": _cmd_spectrum,
    "counting": _cmd_counting,
    "asymptotics": _cmd_asymptotics,
    "berezin": _cmd_berezin,
    "schatten": _cmd_schatten,
    "boundary": _cmd_boundary,
    "krein": _cmd_krein,
    "selftest": _cmd_selftest,
}


_VALUE_FLAGS = ("--lnlambda", "--E", "--lambda", "--radii", "--eps", "--vsup", "--exponent")


def _glue_negative_values(argv: list[str]) -> list[str]:
    # argparse mistakes values like "-12:-4" for option names; fold them into
    # --flag=value form.
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-"):
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
        else:
            out.append(tok)
            i += 1
    return out


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_negative_values(list(sys.argv[1:] if argv is None else argv)))
    try:
        rows, meta = _COMMANDS[args.command](args)
    except (TailNotCertifiedError, QuadratureDivergenceError) as exc:
        print(f"harmotop: certification failure: {exc}", file=sys.stderr)
        return 3
    except (SymbolSyntaxError, ValueError, OSError, KeyError) as exc:
        print(f"harmotop: {exc}", file=sys.stderr)
        return 2
    emit(rows, meta, args)
    if args.command == "selftest" and meta.get("failed"):
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
