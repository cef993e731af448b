"""Command-line front end.

Exit status: 0 clean, 1 violations or conversion errors, 2 usage or
configuration errors.  Data goes to stdout, diagnostics to stderr, and all
text is UTF-8.
"""

from __future__ import annotations

import argparse
import contextlib
import io
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path
from typing import Callable, Sequence

from matchertext import cesc, minml, mlx, mri, rex
from matchertext.analyzer import (
    ContextViolation,
    analyze_with_warnings,
    build_report,
    load_profile,
)
from matchertext.core import GRAPHICAL, STANDARD, MatcherConfig, decode_utf8, validate
from matchertext.errors import ConfigError, EncodingError, MatchertextError

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2

CONFIG_ENV = "MATCHERTEXT_CONFIG"


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="matchertext", description="Matchertext validation, codecs, and transpilers.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def config_flags(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", choices=["standard", "graphical"], default=None,
                        help="alphabet variant (default: standard)")
        sp.add_argument("--config-file", help=f"JSON matcher configuration (default: ${CONFIG_ENV})")

    c = sub.add_parser("check", help="validate files or stdin")
    c.add_argument("paths", nargs="*")
    c.add_argument("--json", action="store_true")
    config_flags(c)

    e = sub.add_parser("escape", help="encode stdin as a C-style literal body")
    e.add_argument("--style", choices=[s.value for s in cesc.EscapeStyle], default="hex")
    e.add_argument("--single-quote", action="store_true", help="escape apostrophes instead of double quotes")
    sub.add_parser("unescape", help="decode a C-style literal body from stdin")

    m = sub.add_parser("ml-expand", help="expand +M markup extensions")
    m.add_argument("--dialect", choices=[d.value for d in mlx.MlDialect], default="html")
    m.add_argument("--nested", action="store_true", help="also expand extensions inside MDATA payloads")

    n = sub.add_parser("minml", help="convert MinML to HTML or XML")
    n.add_argument("--to", choices=["html", "xml"], default="html")
    n.add_argument("--nested", action="store_true", help="convert MinML inside verbatim sections too")

    r = sub.add_parser("mri", help="MRI/URI conversions, one identifier per line")
    r.add_argument("action", choices=["to-uri", "from-uri", "decode"])
    r.add_argument("--standard", action="store_true", help="relax MRI bodies to the standard alphabet")

    x = sub.add_parser("rex", help="regular-expression preprocessing, one pattern per line")
    x.add_argument("action", choices=["translate"])

    a = sub.add_parser("analyze", help="categorize violations in legacy source files")
    a.add_argument("--profile", required=True, help="built-in profile name or profile JSON path")
    a.add_argument("paths", nargs="+")
    a.add_argument("--json", action="store_true")
    a.add_argument("--jobs", type=int, default=4)
    config_flags(a)
    return p


def _load_config(args: argparse.Namespace, env: dict[str, str]) -> MatcherConfig:
    path = args.config_file or env.get(CONFIG_ENV)
    data: dict = {}
    if path:
        try:
            data = json.loads(Path(path).read_text(encoding="utf-8"))
        except (OSError, json.JSONDecodeError) as exc:
            raise ConfigError(f"cannot read config file {path}: {exc}") from None
    if args.config:
        data["alphabet"] = args.config
    return MatcherConfig.from_data(data)


class _Io:
    def __init__(self, stdin: bytes) -> None:
        self.stdin = stdin
        self.out = io.StringIO()
        self.err = io.StringIO()

    def text(self) -> str:
        return decode_utf8(self.stdin)


def _read_file(path: str) -> str:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise ConfigError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return decode_utf8(data)
    except EncodingError as exc:
        raise EncodingError(f"{path}: {exc}", exc.offset) from None


def _cmd_check(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    config = _load_config(args, env)
    inputs = [(p, _read_file(p)) for p in args.paths] if args.paths else [("<stdin>", io_.text())]
    per_file: dict[str, list[ContextViolation]] = {}
    for path, text in inputs:
        per_file[path] = [ContextViolation(path, v, None) for v in validate(text, config)]
        for cv in per_file[path]:
            io_.err.write(f"{path}:{cv.violation.describe()}\n")
    if args.json:
        io_.out.write(json.dumps(build_report(per_file), ensure_ascii=False, indent=2) + "\n")
    return EXIT_FOUND if any(per_file.values()) else EXIT_OK


def _cmd_escape(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    quote = "'" if args.single_quote else '"'
    io_.out.write(cesc.encode(io_.text(), cesc.EscapeStyle(args.style), quote=quote))
    return EXIT_OK


def _cmd_unescape(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    io_.out.write(cesc.decode(io_.text()))
    return EXIT_OK


def _cmd_ml_expand(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    io_.out.write(mlx.expand_ml(io_.text(), mlx.MlDialect(args.dialect), nested=args.nested))
    return EXIT_OK


def _cmd_minml(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    nodes = minml.parse_minml(io_.text())
    emit = minml.minml_to_xml if args.to == "xml" else minml.minml_to_html
    io_.out.write(emit(nodes, nested=args.nested))
    return EXIT_OK


def _per_line(io_: _Io, convert: Callable[[str], str]) -> int:
    status = EXIT_OK
    for lineno, line in enumerate(io_.text().splitlines(), 1):
        if not line:
            continue
        try:
            io_.out.write(convert(line) + "\n")
        except MatchertextError as exc:
            io_.err.write(f"line {lineno}: {exc}\n")
            status = EXIT_FOUND
    return status


def _cmd_mri(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    config = STANDARD if args.standard else GRAPHICAL
    if args.action == "to-uri":
        return _per_line(io_, lambda s: mri.mri_to_uri(mri.parse_mri(s, config)))
    if args.action == "from-uri":
        return _per_line(io_, lambda s: str(mri.uri_to_mri(s)))
    return _per_line(io_, lambda s: mri.decode_uri_extended(s, config))


def _cmd_rex(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    return _per_line(io_, rex.translate_rex)


def _expand_paths(paths: Sequence[str]) -> list[str]:
    files: list[str] = []
    for p in paths:
        path = Path(p)
        if path.is_dir():
            files.extend(str(f) for f in sorted(path.rglob("*")) if f.is_file())
        else:
            files.append(p)
    return sorted(set(files))


def _cmd_analyze(args: argparse.Namespace, io_: _Io, env: dict[str, str]) -> int:
    config = _load_config(args, env)
    profile = load_profile(args.profile)
    files = _expand_paths(args.paths)
    texts = {f: _read_file(f) for f in files}

    def one(path: str) -> tuple[str, list[ContextViolation], list[str]]:
        found, warnings = analyze_with_warnings(texts[path], profile, config, path=path)
        return path, found, warnings

    with ThreadPoolExecutor(max_workers=max(1, args.jobs)) as pool:
        results = list(pool.map(one, files))

    per_file: dict[str, list[ContextViolation]] = {}
    for path, found, warnings in results:
        per_file[path] = found
        for w in warnings:
            io_.err.write(f"{path}: warning: {w}\n")
        if not args.json:
            for cv in found:
                io_.out.write(f"{path}:{cv.violation.describe()} [{cv.context.value}]\n")
    report = build_report(per_file)
    if args.json:
        io_.out.write(json.dumps(report, ensure_ascii=False, indent=2) + "\n")
    else:
        summary = report["summary"]
        contexts = ", ".join(f"{k}={v}" for k, v in summary["contexts"].items())  # type: ignore[index]
        io_.err.write(f"{summary['total']} violation(s) in {len(files)} file(s): {contexts}\n")  # type: ignore[index]
    return EXIT_FOUND if report["summary"]["total"] else EXIT_OK  # type: ignore[index]


_COMMANDS = {
    "check": _cmd_check,
    "escape": _cmd_escape,
    "unescape": _cmd_unescape,
    "ml-expand": _cmd_ml_expand,
    "minml": _cmd_minml,
    "mri": _cmd_mri,
    "rex": _cmd_rex,
    "analyze": _cmd_analyze,
}


def run(argv: Sequence[str], stdin: bytes = b"", env: dict[str, str] | None = None) -> tuple[bytes, bytes, int]:
    """Run one invocation and return (stdout, stderr, exit status)."""
    env = dict(os.environ) if env is None else env
    io_ = _Io(stdin)
    parser = _build_parser()
    try:
        with contextlib.redirect_stdout(io_.out):
            args = parser.parse_args(list(argv))
    except UsageError as exc:
        io_.err.write(f"{exc}\n")
        return b"", io_.err.getvalue().encode("utf-8"), EXIT_USAGE
    except SystemExit as exc:  # --help
        return io_.out.getvalue().encode("utf-8"), b"", EXIT_OK if not exc.code else EXIT_USAGE

    try:
        status = _COMMANDS[args.command](args, io_, env)
    except ConfigError as exc:
        io_.err.write(f"matchertext: {exc}\n")
        status = EXIT_USAGE
    except MatchertextError as exc:
        io_.err.write(f"matchertext: {exc}\n")
        status = EXIT_FOUND
    return (
        io_.out.getvalue().encode("utf-8", "surrogatepass"),
        io_.err.getvalue().encode("utf-8", "surrogatepass"),
        status,
    )


def main(argv: Sequence[str] | None = None) -> int:
    stdin = b"" if sys.stdin is None or sys.stdin.isatty() else sys.stdin.buffer.read()
    out, err, status = run(sys.argv[1:] if argv is None else argv, stdin)
    sys.stdout.buffer.write(out)
    sys.stdout.buffer.flush()
    sys.stderr.buffer.write(err)
    return status


if __name__ == "__main__":
    sys.exit(main())
