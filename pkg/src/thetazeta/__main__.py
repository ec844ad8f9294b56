from __future__ import annotations

import sys
from typing import NoReturn


def run_cli() -> NoReturn:
    """Application Entrypoint.

    Loads ``.env`` settings before the first command runs, then hands over
    to the click group.
    """
    from thetazeta.config.base import get_settings

    get_settings()
    from thetazeta.cli import thetazeta_group

    sys.exit(thetazeta_group())


if __name__ == "__main__":
    run_cli()
