"""``figures <kind> <input.csv> -o <out.svg>``"""

import argparse
import sys

from .render import KINDS, EmptyInput, FigureSpec, SchemaError, render


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(1)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="figures")
    parser.add_argument("kind", choices=KINDS, help="which sweep the CSV came from")
    parser.add_argument("input_csv", help="raw sweep CSV from subspace-perturb")
    parser.add_argument("-o", "--output", required=True, help="output .svg or .png")
    parser.add_argument("--format", choices=("svg", "png"),
                        help="override the format implied by the suffix")
    return parser


def cli_main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    spec = FigureSpec(
        input_csv=args.input_csv, kind=args.kind,
        output_path=args.output, format=args.format,
    )
    try:
        out = render(spec)
    except (SchemaError, EmptyInput) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    print(f"wrote {out}")
    return 0


def main() -> None:
    sys.exit(cli_main(sys.argv[1:]))


if __name__ == "__main__":
    main()
