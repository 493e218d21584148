#!/usr/bin/env python3
"""Benchmark: compiled kernel extension vs the pure-Python fallback.

Times each bit-level kernel on a synthetic 256x256 alpha plane (the largest
geometry an ICO entry can hold) plus one end-to-end embed/extract pass, and
prints a table with the speedup. Run after `pip install -e .` so the
compiled extension exists:

    python benchmarks/bench_kernels.py [--repeats 200]
"""

from __future__ import annotations

import argparse
import random
import time

from icostego import _kernels_py

try:
    from icostego import _kernels
except ImportError:
    _kernels = None


def timeit(fn, repeats: int) -> float:
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def build_workload(seed: int = 7):
    rng = random.Random(seed)
    n = 256 * 256
    alpha = bytes(rng.choice((0, 1, 2, 64, 128, 254, 255)) for _ in range(n))
    payload = rng.randbytes(n // 8)
    randbits = rng.randbytes(n // 8)
    rgba_cover = rng.randbytes(4 * n)
    rgba_suspect = bytearray(rgba_cover)
    for i in rng.sample(range(n), 500):
        rgba_suspect[4 * i + 3] ^= 1
    return alpha, payload, randbits, rgba_cover, bytes(rgba_suspect)


def kernel_cases(impl, workload):
    alpha, payload, randbits, cover, suspect = workload
    slots = impl.count_eligible(alpha)

    def write():
        impl.write_lsbs(bytearray(alpha), payload, 0, slots)

    def read():
        impl.read_lsbs(alpha, bytearray(slots // 8 + 1), 0, slots)

    def randomize():
        impl.randomize_lsbs(bytearray(alpha), randbits)

    return {
        "count_eligible": lambda: impl.count_eligible(alpha),
        "eligible_indices": lambda: impl.eligible_indices(alpha),
        "write_lsbs": write,
        "read_lsbs": read,
        "lsb_counts": lambda: impl.lsb_counts(alpha),
        "alpha_histogram": lambda: impl.alpha_histogram(alpha),
        "randomize_lsbs": randomize,
        "normalize_extremes": lambda: impl.normalize_extremes(bytearray(alpha)),
        "classify_diff": lambda: impl.classify_diff(cover, suspect, 64),
    }


KERNEL_NAMES = [
    "count_eligible", "eligible_indices", "write_lsbs", "read_lsbs",
    "lsb_counts", "alpha_histogram", "randomize_lsbs", "normalize_extremes",
    "classify_diff",
]


def end_to_end(impl, repeats: int) -> float:
    """Embed+extract a near-capacity payload through a 128x128 DIB cover with
    the given kernel implementation patched in (both expose one surface)."""
    import icostego.kernels as kernels
    from icostego.codec import RgbaImage, encode_frame
    from icostego.container import FrameFormat, IcoEntry, IcoFile
    from icostego.engine import embed, extract

    cover = IcoFile(
        [IcoEntry(128, 128, encode_frame(
            RgbaImage.filled(128, 128, (30, 60, 90, 255)), FrameFormat.DIB))]
    )
    payload = random.Random(11).randbytes(2000)
    saved = {name: getattr(kernels, name) for name in KERNEL_NAMES}
    try:
        for name in KERNEL_NAMES:
            setattr(kernels, name, getattr(impl, name))
        return timeit(lambda: extract(embed(cover, payload)), repeats)
    finally:
        for name, fn in saved.items():
            setattr(kernels, name, fn)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeats", type=int, default=200)
    args = parser.parse_args()

    if _kernels is None:
        print("compiled extension not built; only the pure-Python timings follow")

    workload = build_workload()
    pure = kernel_cases(_kernels_py, workload)
    compiled = kernel_cases(_kernels, workload) if _kernels else None

    print(f"{'kernel':<20} {'pure (us)':>12} {'compiled (us)':>14} {'speedup':>9}")
    for name, pure_fn in pure.items():
        pure_t = timeit(pure_fn, args.repeats) * 1e6
        if compiled:
            comp_t = timeit(compiled[name], args.repeats) * 1e6
            print(f"{name:<20} {pure_t:>12.1f} {comp_t:>14.1f} {pure_t / comp_t:>8.1f}x")
        else:
            print(f"{name:<20} {pure_t:>12.1f} {'-':>14} {'-':>9}")

    e2e_repeats = max(5, args.repeats // 10)
    pure_e2e = end_to_end(_kernels_py, e2e_repeats) * 1e3
    if compiled:
        comp_e2e = end_to_end(_kernels, e2e_repeats) * 1e3
        print(
            f"{'embed+extract 128px':<20} {pure_e2e * 1e3:>12.1f} "
            f"{comp_e2e * 1e3:>14.1f} {pure_e2e / comp_e2e:>8.1f}x"
        )
    else:
        print(f"{'embed+extract 128px':<20} {pure_e2e * 1e3:>12.1f} {'-':>14} {'-':>9}")


if __name__ == "__main__":
    main()
