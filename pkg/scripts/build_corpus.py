"""Regenerate the bundled corpus from the builders in leibtensor.corpus.

    python scripts/build_corpus.py [--out DIR] [--no-check]
"""
import argparse
import sys
from dataclasses import dataclass
from pathlib import Path

from leibtensor.cli import main as cli_main
from leibtensor.corpus import corpus_dir, write_corpus


@dataclass
class BuildConfig:
    out: Path
    check: bool = True


def run(cfg: BuildConfig) -> int:
    written = write_corpus(cfg.out)
    print(f"wrote {len(written)} files to {cfg.out}")
    if cfg.check:
        return cli_main(["check", str(cfg.out)])
    return 0


def parse(argv=None) -> BuildConfig:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=corpus_dir())
    p.add_argument("--no-check", dest="check", action="store_false")
    a = p.parse_args(argv)
    return BuildConfig(a.out, a.check)


if __name__ == "__main__":
    sys.exit(run(parse()))
