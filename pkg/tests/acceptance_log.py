"""Collects acceptance verdicts and folds them into one line per criterion."""
import re

RESULTS: dict[str, tuple[bool, str]] = {}

# sub-checks that explain a criterion without deciding its verdict
ADVISORY = {"7b"}


def record(key: str, ok: bool, detail: str) -> bool:
    RESULTS[key] = (ok, detail)
    print(f"criterion {key} {'PASS' if ok else 'FAIL'}: {detail}")
    return ok


def _number(key: str) -> int:
    return int(re.match(r"\d+", key).group())


def lines() -> list[str]:
    out = []
    for num in sorted({_number(k) for k in RESULTS}):
        keys = sorted(k for k in RESULTS if _number(k) == num)
        deciding = [k for k in keys if k not in ADVISORY]
        ok = all(RESULTS[k][0] for k in deciding)
        if len(keys) == 1:
            out.append(f"criterion {num} {'PASS' if ok else 'FAIL'}: {RESULTS[keys[0]][1]}")
            continue
        out.append(f"criterion {num} {'PASS' if ok else 'FAIL'}")
        for k in keys:
            tag = "PASS" if RESULTS[k][0] else "FAIL"
            out.append(f"    {k} {tag}: {RESULTS[k][1]}")
    return out
