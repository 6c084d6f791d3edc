#!/usr/bin/env python3
# -*- coding: UTF-8 -*-
import sys

from tccmap.cli import goldens, tccmap_run

if __name__ == "__main__":

    allowed_subcommands = ("--tccmap-run", "--goldens")

    if not len(sys.argv) > 1 or sys.argv[1] not in allowed_subcommands:
        # default (no args, no switch in first arg): run the unified command
        tccmap_run._parse_cli_args()
    else:
        # pop switch and forward args to subcommand
        subcommand = sys.argv.pop(1)
        if subcommand == "--goldens":
            goldens._parse_cli_args()
        else:
            tccmap_run._parse_cli_args()
