"""Run every exhaustive extremal scan up to a chosen order and emit JSON lines."""

import argparse
import sys
from dataclasses import dataclass

from treewalk import verify


@dataclass(frozen=True)
class Config:
    max_n: int = 11
    rooted_max_n: int = 10


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=Config.max_n)
    p.add_argument("--rooted-max-n", type=int, default=Config.rooted_max_n)
    cfg = Config(**{k.replace("-", "_"): v for k, v in vars(p.parse_args(argv)).items()})
    failed = 0
    for n in range(4, cfg.max_n + 1):
        reports = [verify.verify_max(n, d) for d in range(3, n)]
        reports += [verify.verify_min(n, d) for d in range(3, n)]
        reports += list(verify.verify_fixed_order(n))
        if n <= cfg.rooted_max_n:
            reports += [verify.verify_rooted_broom(n, r) for r in range(2, n)]
        for r in reports:
            failed += not r.passed
            print(r.to_json())
    print(f"{failed} failing reports", file=sys.stderr)
    return 1 if failed else 0


if __name__ == "__main__":
    sys.exit(main())
