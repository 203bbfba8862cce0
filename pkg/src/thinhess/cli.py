"""Command-line interface: ``thinhess <command> ...``.

Exit status is 0 for success or an affirmative answer, 1 for a well-formed
negative answer, and 2 for unreadable input or bad usage.
"""

from __future__ import annotations

import argparse
import json
import re
import sys
from pathlib import Path

from .bases import TRANSITION_PAIRS, BasisKind, closed_form_representation, make_basis, represent, transition_matrix
from .errors import FieldError, THError, UnsupportedFieldError
from .field import Field, parse_field_spec
from .linalg import Matrix
from .randomgen import random_parameter_array
from .recognize import MatrixPair, extract_parameter_array, isomorphic, recognize_th_pair
from .thcore import (
    ParameterArray,
    THSystem,
    build_canonical_system,
    dual_parameter_array,
    nu_from_idempotents,
    nu_from_parameters,
    validate_parameter_array,
)
from .verify import verify_parameter_array

EXIT_OK, EXIT_NO, EXIT_USAGE = 0, 1, 2


class InputError(Exception):
    """Raised for any problem with command-line input; maps to exit status 2."""


# file formats


def _load_json(path: str) -> dict:
    try:
        text = sys.stdin.read() if path == "-" else Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: malformed JSON ({exc.msg} at line {exc.lineno})") from None
    if not isinstance(data, dict):
        raise InputError(f"{path}: top level must be a JSON object")
    return data


def _field(data: dict, path: str) -> Field:
    if "field" not in data:
        raise InputError(f"{path}: missing 'field'")
    try:
        return parse_field_spec(data["field"])
    except FieldError as exc:
        raise InputError(f"{path}: {exc}") from None


def _scalar(field: Field, x, where: str):
    if isinstance(x, bool) or not isinstance(x, (str, int)):
        raise InputError(f"{where}: scalars must be strings such as \"5/6\" (got {json.dumps(x)})")
    try:
        return field.parse(x) if isinstance(x, str) else field(x)
    except FieldError as exc:
        raise InputError(f"{where}: {exc}") from None


def _scalar_list(field: Field, data: dict, key: str, path: str) -> list:
    if key not in data:
        raise InputError(f"{path}: missing '{key}'")
    seq = data[key]
    if not isinstance(seq, list):
        raise InputError(f"{path}: '{key}' must be a list")
    return [_scalar(field, x, f"{path}: {key}[{i}]") for i, x in enumerate(seq)]


def parse_param_file(data: dict, path: str = "<input>") -> ParameterArray:
    f = _field(data, path)
    theta = _scalar_list(f, data, "theta", path)
    theta_star = _scalar_list(f, data, "theta_star", path)
    phi = _scalar_list(f, data, "phi", path)
    if not theta:
        raise InputError(f"{path}: 'theta' must not be empty")
    if len(theta_star) != len(theta) or len(phi) != len(theta) - 1:
        raise InputError(
            f"{path}: lengths of theta, theta_star, phi must be d+1, d+1, d "
            f"(got {len(theta)}, {len(theta_star)}, {len(phi)})"
        )
    return ParameterArray(f, theta, theta_star, phi)


def _matrix(field: Field, data: dict, key: str, path: str) -> Matrix:
    rows = data.get(key)
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{path}: '{key}' must be a nonempty list of rows")
    n = len(rows)
    if any(len(r) != n for r in rows):
        raise InputError(f"{path}: '{key}' must be square")
    vals = [[_scalar(field, x, f"{path}: {key}[{i}][{j}]") for j, x in enumerate(r)] for i, r in enumerate(rows)]
    return Matrix(field, vals)


def parse_pair_file(data: dict, path: str = "<input>") -> MatrixPair:
    f = _field(data, path)
    A = _matrix(f, data, "A", path)
    As = _matrix(f, data, "A_star", path)
    if A.shape != As.shape:
        raise InputError(f"{path}: A is {A.nrows}x{A.ncols} but A_star is {As.nrows}x{As.ncols}")
    return MatrixPair(A, As)


def _mat_json(m: Matrix) -> list:
    return m.to_strings()


def _vec_json(field: Field, v) -> list:
    return [field.format(x) for x in v]


_FLAT_LIST = re.compile(r"\[\s*((?:\"[^\"]*\"|-?\d+)(?:,\s*(?:\"[^\"]*\"|-?\d+))*)\s*\]")


def to_json_text(obj) -> str:
    """Indented JSON with every list of scalars kept on one line."""
    text = json.dumps(obj, indent=2)
    return _FLAT_LIST.sub(lambda m: "[" + re.sub(r",\s+", ", ", m.group(1)) + "]", text) + "\n"


def _emit(obj, args) -> None:
    text = to_json_text(obj)
    if getattr(args, "output", None):
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _valid_params(path: str) -> ParameterArray:
    p = parse_param_file(_load_json(path), path)
    v = validate_parameter_array(p)
    if not v:
        raise InputError(f"{path}: invalid parameter array: {v.message}")
    return p


# commands


def cmd_validate(args) -> int:
    p = parse_param_file(_load_json(args.params), args.params)
    v = validate_parameter_array(p)
    out = {"valid": v.valid, "message": v.message}
    if not v:
        out["condition"] = v.condition
        out["indices"] = list(v.indices)
    _emit(out, args)
    return EXIT_OK if v else EXIT_NO


def _system_json(s: THSystem) -> dict:
    f = s.field
    return {
        "field": f.name,
        "A": _mat_json(s.A),
        "A_star": _mat_json(s.A_star),
        "theta": _vec_json(f, s.theta),
        "theta_star": _vec_json(f, s.theta_star),
        "E": [_mat_json(e) for e in s.E],
        "E_star": [_mat_json(e) for e in s.E_star],
    }


def cmd_build(args) -> int:
    _emit(_system_json(build_canonical_system(_valid_params(args.params))), args)
    return EXIT_OK


def cmd_matrices(args) -> int:
    p = _valid_params(args.params)
    kind = _basis_kind(args.basis)
    s = build_canonical_system(p)
    b = make_basis(s, kind)
    rep = represent(s, b)
    if not rep.same_matrices(closed_form_representation(p, kind)):
        raise THError(f"{kind.cli_name}: conjugated pair differs from its closed form")
    _emit(
        {
            "basis": kind.cli_name,
            "field": p.field.name,
            "B": _mat_json(rep.B),
            "B_star": _mat_json(rep.B_star),
            "columns": _mat_json(b.columns),
            "seed": _vec_json(p.field, b.seed),
        },
        args,
    )
    return EXIT_OK


def _basis_kind(name: str) -> BasisKind:
    try:
        return BasisKind.parse(name)
    except ValueError as exc:
        raise InputError(str(exc)) from None


def cmd_transition(args) -> int:
    p = _valid_params(args.params)
    src, dst = _basis_kind(args.source), _basis_kind(args.target)
    if (src, dst) not in TRANSITION_PAIRS:
        allowed = ", ".join(f"{a.cli_name}->{b.cli_name}" for a, b in TRANSITION_PAIRS)
        raise InputError(f"no named transition matrix from {src.cli_name} to {dst.cli_name}; available: {allowed}")
    m = transition_matrix(p, src, dst)
    _emit({"from": src.cli_name, "to": dst.cli_name, "field": p.field.name, "matrix": _mat_json(m)}, args)
    return EXIT_OK


def cmd_nu(args) -> int:
    p = _valid_params(args.params)
    closed = nu_from_parameters(p)
    trace = nu_from_idempotents(build_canonical_system(p))
    f = p.field
    _emit({"closed_form": f.format(closed), "trace_form": f.format(trace)}, args)
    if closed != trace:
        print("error: the two computations of nu disagree", file=sys.stderr)
        return EXIT_NO
    return EXIT_OK


def cmd_dual(args) -> int:
    _emit(dual_parameter_array(_valid_params(args.params)).to_json(), args)
    return EXIT_OK


def cmd_recognize(args) -> int:
    pair = parse_pair_file(_load_json(args.pair), args.pair)
    report = recognize_th_pair(pair)
    _emit(report.to_json(), args)
    return EXIT_OK if report.is_th_pair else EXIT_NO


def _systems_of(path: str) -> tuple[list[THSystem], Field, int]:
    data = _load_json(path)
    if "A" in data or "A_star" in data:
        pair = parse_pair_file(data, path)
        return [s for s, _ in recognize_th_pair(pair).systems], pair.field, pair.A.nrows
    p = parse_param_file(data, path)
    v = validate_parameter_array(p)
    if not v:
        raise InputError(f"{path}: invalid parameter array: {v.message}")
    return [build_canonical_system(p)], p.field, p.d + 1


def cmd_isomorphic(args) -> int:
    sys_a, fa, na = _systems_of(args.first)
    sys_b, fb, nb = _systems_of(args.second)
    if fa != fb:
        raise InputError(f"inputs are over different fields ({fa} and {fb})")
    if na != nb:
        raise InputError(f"inputs have different dimensions ({na} and {nb})")
    for s1 in sys_a:
        for s2 in sys_b:
            w = isomorphic(s1, s2)
            if w is not None:
                _emit(
                    {
                        "isomorphic": True,
                        "parameter_array": extract_parameter_array(s1).to_json(),
                        "gamma": _mat_json(w.gamma),
                    },
                    args,
                )
                return EXIT_OK
    _emit({"isomorphic": False}, args)
    return EXIT_NO


def cmd_random(args) -> int:
    try:
        f = parse_field_spec(args.field)
    except FieldError as exc:
        raise InputError(str(exc)) from None
    if args.d < 0:
        raise InputError("--d must be nonnegative")
    if f.order is not None and f.order < args.d + 1:
        print(f"error: {f.name} has fewer than {args.d + 1} elements, so no valid array exists", file=sys.stderr)
        return EXIT_NO
    _emit(random_parameter_array(args.d, f, args.seed).to_json(), args)
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _valid_params(args.params)
    results = verify_parameter_array(p)
    ok = all(r.passed for r in results)
    _emit({"parameter_array": p.to_json(), "passed": ok, "checks": [r.to_json() for r in results]}, args)
    return EXIT_OK if ok else EXIT_NO


# argument parsing


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="thinhess", description="Exact computations with thin Hessenberg pairs and systems.")
    sub = ap.add_subparsers(dest="command", required=True, metavar="command")

    def add(name, fn, help_text, *, params=True):
        sp = sub.add_parser(name, help=help_text, description=help_text)
        if params:
            sp.add_argument("params", help="parameter-array JSON file ('-' for stdin)")
        sp.add_argument("-o", "--output", help="write JSON here instead of standard output")
        sp.set_defaults(func=fn)
        return sp

    add("validate", cmd_validate, "check the existence conditions of a parameter array")
    add("build", cmd_build, "print the canonical TH system of a parameter array")
    sp = add("matrices", cmd_matrices, "print the pair representing (A, A*) in a distinguished basis")
    sp.add_argument("--basis", required=True, help="one of: " + ", ".join(k.cli_name for k in BasisKind))
    sp = add("transition", cmd_transition, "print a named transition matrix (T, T*, Z, Z*, P, P* or an inverse of T, T*)")
    sp.add_argument("--from", dest="source", required=True, help="source basis kind")
    sp.add_argument("--to", dest="target", required=True, help="target basis kind")
    add("nu", cmd_nu, "compute nu by its closed form and by the trace of E_0 E*_0")
    add("dual", cmd_dual, "print the dual parameter array")
    sp = add("recognize", cmd_recognize, "decide whether a matrix pair is a TH pair and list its systems", params=False)
    sp.add_argument("pair", help="matrix-pair JSON file")
    sp = add("isomorphic", cmd_isomorphic, "decide whether two inputs carry isomorphic TH systems", params=False)
    sp.add_argument("first", help="parameter-array or matrix-pair JSON file")
    sp.add_argument("second", help="parameter-array or matrix-pair JSON file")
    sp = add("random", cmd_random, "generate a deterministic pseudo-random valid parameter array", params=False)
    sp.add_argument("--d", type=int, required=True, help="diameter d (the matrices are (d+1) x (d+1))")
    sp.add_argument("--field", default="rational", help="'rational' or 'gf:<p>' (default rational)")
    sp.add_argument("--seed", type=int, default=0, help="generator seed (default 0)")
    add("verify", cmd_verify, "run the identity suite on the canonical system of a parameter array")
    return ap


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # argparse exits 2 on usage errors and 0 on --help
        return int(exc.code or 0)
    try:
        return args.func(args)
    except (InputError, UnsupportedFieldError, FieldError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except THError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
