"""Command-line wrapper: embed-export --vocab <path> --model <id> --out <path>."""

from __future__ import annotations

import argparse
import sys

from .exporter import ExportError, export_vocab_vectors


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="embed-export",
        description="Export per-word encoder vectors to the text-w2v format.",
    )
    parser.add_argument("--vocab", required=True, help="word list, one per line")
    parser.add_argument("--model", required=True, help="model id or local directory")
    parser.add_argument("--out", required=True, help="output text-w2v path")
    parser.add_argument(
        "--manifest",
        help="manifest JSON path (default: <out>.manifest.json)",
    )
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    manifest_path = args.manifest or f"{args.out}.manifest.json"
    try:
        manifest = export_vocab_vectors(args.vocab, args.model, args.out, manifest_path)
    except (ExportError, OSError) as exc:
        print(f"embed-export: error: {exc}", file=sys.stderr)
        return 1
    print(
        f"exported {manifest.words_exported} words "
        f"(dim {manifest.dimension}, {manifest.words_skipped} skipped) "
        f"-> {manifest.output_path}"
    )
    return 0


if __name__ == "__main__":
    sys.exit(main())
