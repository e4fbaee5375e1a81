"""Dataclass configs shared by the experiment scripts, exposed as CLI flags."""

import argparse
import dataclasses


def parse_config(cls, description):
    """Build ``cls`` from command-line flags named after its fields."""
    parser = argparse.ArgumentParser(description=description)
    for f in dataclasses.fields(cls):
        flag = "--" + f.name.replace("_", "-")
        default = f.default
        if isinstance(default, tuple):
            parser.add_argument(flag, type=type(default[0]), nargs="+", default=list(default),
                                help=f"(default: {' '.join(map(str, default))})")
        else:
            parser.add_argument(flag, type=type(default), default=default, help=f"(default: {default})")
    ns = parser.parse_args()
    return cls(**{k: tuple(v) if isinstance(v, list) else v for k, v in vars(ns).items()})
