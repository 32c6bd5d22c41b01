"""Command-line entry point.

Usage::

    dashgen validate definition.yaml
    dashgen layout definition.yaml --style nested [--config layout.yaml]
    dashgen render definition.yaml --style pyramidal --backend grafana --out out/
    dashgen layout def.yaml --style nested | dashgen render def.yaml --ir - --backend html --out out/

Exit codes: 0 success, 1 validation error, 2 layout error, 3 I/O or parse
error, 4 bad usage.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Optional, Sequence, TextIO

from dashgen.definition import parse_definition, validate_definition
from dashgen.errors import DashgenError, LayoutError
from dashgen.ir import LAYOUT_STYLES, check_geometry, parse_ir
from dashgen.layout import LayoutConfig, load_layout_config
from dashgen.pipeline import InvalidDefinition, compile_dashboard, load_definition
from dashgen.render import (
    GrafanaOptions,
    render_grafana,
    render_html_preview,
    render_ir,
    write_artifacts,
)

EXIT_OK = 0
EXIT_INVALID = 1
EXIT_LAYOUT = 2
EXIT_IO = 3
EXIT_USAGE = 4

BACKENDS = ("grafana", "ir", "html")


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="dashgen", description="Compile declarative dashboard definitions.")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("validate", help="check a definition and list its errors")
    p.add_argument("input", help="definition YAML file, or - for stdin")

    for name, text in (("layout", "print the virtual dashboard IR"),
                       ("render", "write backend artifacts into a directory")):
        p = sub.add_parser(name, help=text)
        p.add_argument("input", help="definition YAML file, or - for stdin")
        p.add_argument("--style", choices=LAYOUT_STYLES, help="meta-model layout; overrides the config file")
        p.add_argument("--config", type=Path, help="layout config YAML")

    render = sub.choices["render"]
    render.add_argument("--backend", choices=BACKENDS, required=True)
    render.add_argument("--out", type=Path, required=True, help="output directory")
    render.add_argument("--ir", dest="ir_path",
                        help="render this IR file (or - for stdin) instead of laying out again")
    render.add_argument("--datasource", default="default", help="Grafana datasource name")
    render.add_argument("--tag", default="dashgen", help="tag stamped on Grafana dashboards")
    render.add_argument("--item-rows", action="store_true",
                        help="add Grafana row panels above multi-panel items (shifts panels down)")
    return parser


def _read(path: str, stdin: TextIO) -> str:
    if path == "-":
        return stdin.read()
    return Path(path).read_text(encoding="utf-8")


def _layout_config(args: argparse.Namespace) -> LayoutConfig:
    if args.config is not None:
        cfg = load_layout_config(args.config.read_text(encoding="utf-8"))
        return cfg.with_style(args.style) if args.style else cfg
    if args.style is None:
        raise UsageError("dashgen: a layout style is required (--style or a --config with 'style')")
    return LayoutConfig(style=args.style)


def _validate(args, stdin, stdout, stderr) -> int:
    defn = parse_definition(_read(args.input, stdin))
    errors = validate_definition(defn)
    for err in errors:
        print(err, file=stderr)
    return EXIT_INVALID if errors else EXIT_OK


def _layout(args, stdin, stdout, stderr) -> int:
    defn = load_definition(_read(args.input, stdin))
    vd = compile_dashboard(defn, _layout_config(args))
    stdout.write(render_ir(vd).content.decode("utf-8"))
    return EXIT_OK


def _render(args, stdin, stdout, stderr) -> int:
    if args.ir_path == "-" and args.input == "-":
        raise UsageError("dashgen: the definition and the IR cannot both come from stdin")
    defn = load_definition(_read(args.input, stdin))
    if args.ir_path is not None:
        vd = parse_ir(_read(args.ir_path, stdin))
        problems = check_geometry(vd)
        if problems:
            for problem in problems:
                print(problem, file=stderr)
            return EXIT_IO
    else:
        vd = compile_dashboard(defn, _layout_config(args))

    if args.backend == "grafana":
        opts = GrafanaOptions(args.datasource, args.tag, args.item_rows)
        artifacts = render_grafana(vd, defn, opts)
    elif args.backend == "html":
        artifacts = [render_html_preview(vd)]
    else:
        artifacts = [render_ir(vd)]
    write_artifacts(artifacts, args.out)
    for artifact in artifacts:
        print(artifact.relative_path, file=stdout)
    return EXIT_OK


_COMMANDS = {"validate": _validate, "layout": _layout, "render": _render}


def run_cli(argv: Sequence[str], stdin: Optional[TextIO] = None, stdout: Optional[TextIO] = None,
            stderr: Optional[TextIO] = None) -> int:
    """Run one command and return its exit code; diagnostics go to ``stderr``."""
    stdin = stdin or sys.stdin
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    try:
        args = _build_parser().parse_args(list(argv))
        return _COMMANDS[args.command](args, stdin, stdout, stderr)
    except UsageError as exc:
        print(exc, file=stderr)
        return EXIT_USAGE
    except InvalidDefinition as exc:
        for err in exc.errors:
            print(err, file=stderr)
        return EXIT_INVALID
    except LayoutError as exc:
        print(exc, file=stderr)
        return EXIT_LAYOUT
    except (DashgenError, OSError, UnicodeDecodeError) as exc:
        print(f"dashgen: {exc}", file=stderr)
        return EXIT_IO


def main(argv: Optional[Sequence[str]] = None) -> None:
    sys.exit(run_cli(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
