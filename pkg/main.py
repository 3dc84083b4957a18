import argparse
import logging
import sys
from pathlib import Path

from common.errors import BcvError, ConfigError
from jobs.config import load_config
from jobs.runner import JobRunner

COMMANDS = ["classify", "chart", "cmc", "minimal", "deform", "verify", "export"]

LOGGER = logging.getLogger("bcvhelix")


def parse_args(argv=None):
    parser = argparse.ArgumentParser(prog="bcvhelix", description="Helicoidal CMC surfaces in BCV spaces")
    parser.add_argument("command", choices=COMMANDS, help="What to run")
    parser.add_argument("--config", required=True, type=Path, help="JSON job configuration")
    parser.add_argument("--out", default=Path("out"), type=Path, help="Output directory")
    parser.add_argument(
        "--override", action="append", default=[], metavar="KEY=VALUE", help="Patch a config entry, e.g. seed.a=0.25"
    )
    parser.add_argument("--verbose", action="store_true", help="Log progress")
    parser.add_argument("--debug", action="store_true", help="Log per-evaluation detail")

    return parser.parse_args(argv)


def main(argv=None) -> int:
    args = parse_args(argv)

    logging.basicConfig(
        level=logging.DEBUG if args.debug else logging.INFO if args.verbose else logging.WARNING,
        format="%(asctime)s %(levelname)s %(name)s: %(message)s",
    )
    try:
        config = load_config(args.config.read_text(encoding="utf-8"), args.override, mode=args.command)
        return JobRunner(config, args.out).run(args.command)
    except ConfigError as e:
        LOGGER.error(f"config: {e}")
        return 2
    except OSError as e:
        LOGGER.error(f"io: {e}")
        return 2
    except BcvError as e:
        LOGGER.error(f"{args.command}: {type(e).__name__}: {e}")
        return 3


if __name__ == "__main__":
    sys.exit(main())
