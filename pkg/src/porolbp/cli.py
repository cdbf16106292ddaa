"""``porolbp`` command-line interface.

Exit codes: 0 success, 1 domain error (geometry, size mismatch, unknown stone
type), 2 I/O or file-format error.  Every report prints as aligned text, or
as ``key=value`` lines with ``--machine``.
"""

from __future__ import annotations

import argparse
import os
import sys
import warnings

from . import __version__, modelfile
from .bench import bench_image, run_bench
from .detector import DefectPattern, DetectorConfig, detect_with_stats, train
from .errors import FormatError, GeometryError
from .grading import evaluate, grade, load_grade_tables, porosity_percent
from .imagefile import read_image, write_pgm
from .retinex import RetinexConfig, ssr_normalize
from .synth import TEXTURES, Pore, synthesize

EXIT_OK, EXIT_DOMAIN, EXIT_IO = 0, 1, 2


def _emit(pairs, machine: bool, out=None):
    out = out or sys.stdout
    width = max(len(k) for k, _ in pairs)
    for k, v in pairs:
        if isinstance(v, float):
            v = f"{v:.6g}" if not machine else repr(v)
        print(f"{k}={v}" if machine else f"{k.replace('_', ' '):<{width}}  {v}", file=out)


def _retinex_config(args) -> RetinexConfig | None:
    if getattr(args, "no_normalize", False):
        return None
    return RetinexConfig(sigma=args.sigma, kernel_radius=args.kernel_radius)


def _load_pattern(path) -> DefectPattern:
    return DefectPattern.from_array(read_image(path).data)


def cmd_normalize(args) -> int:
    img = read_image(args.image)
    write_pgm(args.output, ssr_normalize(img, _retinex_config(args)))
    return EXIT_OK


def cmd_train(args) -> int:
    cfg = DetectorConfig(
        window=args.window,
        segment_length=args.segment_length,
        uniformity_threshold=args.uniformity_threshold,
        train_overlap=args.train_overlap,
        retinex=_retinex_config(args),
    )
    img = read_image(args.image)
    model = train(img, cfg, stone_type=args.stone_type)
    modelfile.save(model, args.output)
    _emit([
        ("model", args.output),
        ("stone_type", model.stone_type),
        ("threshold_x", model.threshold_x),
        ("threshold_y", model.threshold_y),
        ("window", cfg.window),
        ("segment_length", cfg.segment_length),
        ("retinex", "off" if cfg.retinex is None else "on"),
    ], args.machine)
    return EXIT_OK


def cmd_detect(args) -> int:
    # load and validate everything before writing any output
    model = modelfile.load(args.model)
    img = read_image(args.image)
    tables = load_grade_tables(args.grades)
    pattern, stats = detect_with_stats(img, model)
    if args.out_pattern:
        write_pgm(args.out_pattern, pattern.to_image_array())
    porosity = porosity_percent(pattern)
    stone = args.stone_type or model.stone_type
    try:
        verdict, status = grade(stone, porosity, tables), EXIT_OK
    except KeyError as exc:
        print(f"error: {exc.args[0]}", file=sys.stderr)
        verdict, status = "n/a", EXIT_DOMAIN
    _emit([
        ("porosity_percent", porosity),
        ("stone_type", stone),
        ("grade", verdict),
        ("windows", int(stats.origins.shape[0])),
        ("flagged_windows", int(stats.flagged.sum())),
    ], args.machine)
    if args.report:
        for (r, c), dx, dy, f in zip(stats.origins, stats.dist_x, stats.dist_y, stats.flagged):
            print(f"window={r},{c} dist_x={float(dx)!r} dist_y={float(dy)!r} flagged={int(f)}")
    return status


def cmd_grade(args) -> int:
    tables = load_grade_tables(args.grades)
    _emit([("stone_type", args.stone_type), ("porosity_percent", args.porosity),
           ("grade", grade(args.stone_type, args.porosity, tables))], args.machine)
    return EXIT_OK


def cmd_evaluate(args) -> int:
    pred = _load_pattern(args.pattern)
    truth = _load_pattern(args.truth)
    report = evaluate(pred, truth, args.window)
    print(report.to_machine() if args.machine else report.to_text())
    return EXIT_OK


def _parse_pore(text: str) -> Pore:
    try:
        row, col, radius = (float(v) for v in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"pore must be ROW,COL,RADIUS, got {text!r}") from None
    return Pore(row, col, radius)


def cmd_synth(args) -> int:
    pores = args.pore if args.pore else args.pores
    result = synthesize(args.kind, (args.height or args.size, args.size), pores,
                        radius_range=(args.radius_min, args.radius_max), contrast=args.contrast,
                        seed=args.seed, noise=args.noise, amplitude=args.amplitude)
    write_pgm(args.image, result.image)
    write_pgm(args.truth, result.truth.to_image_array())
    _emit([("image", args.image), ("truth", args.truth), ("pores", len(result.pores)),
           ("porosity_percent", porosity_percent(result.truth))], args.machine)
    return EXIT_OK


def cmd_bench(args) -> int:
    img = read_image(args.image) if args.image else bench_image(args.size, args.seed)
    result = run_bench(img, window=args.window, length=args.segment_length, repeats=args.repeats)
    print(result.to_machine() if args.machine else result.to_text())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--machine", action="store_true", help="print key=value lines")

    retinex = argparse.ArgumentParser(add_help=False)
    retinex.add_argument("--sigma", type=float, default=30.0, help="retinex surround scale (default 30)")
    retinex.add_argument("--kernel-radius", type=int, default=None,
                         help="surround kernel half-width (default ceil(3*sigma))")

    parser = argparse.ArgumentParser(prog="porolbp", description="Stone surface porosity from 1D LBP texture statistics.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("normalize", parents=[retinex], help="single-scale retinex normalization")
    p.add_argument("image")
    p.add_argument("output", help="output PGM")
    p.set_defaults(func=cmd_normalize)

    p = sub.add_parser("train", parents=[common, retinex], help="build a model from a defect-free image")
    p.add_argument("image")
    p.add_argument("-o", "--output", required=True, help="model file to write")
    p.add_argument("--stone-type", default="unknown")
    p.add_argument("--window", type=int, default=16)
    p.add_argument("--segment-length", type=int, default=8)
    p.add_argument("--uniformity-threshold", type=float, default=None, help="default: segment length / 4")
    p.add_argument("--train-overlap", type=int, default=None, help="training window overlap (default window/2)")
    p.add_argument("--no-normalize", action="store_true", help="skip retinex normalization")
    p.set_defaults(func=cmd_train)

    p = sub.add_parser("detect", parents=[common], help="defect pattern, porosity and grade")
    p.add_argument("image")
    p.add_argument("model")
    p.add_argument("--out-pattern", help="write the defect pattern as PGM")
    p.add_argument("--report", action="store_true", help="also print per-window distances")
    p.add_argument("--stone-type", default=None, help="grade as this stone type instead of the model's")
    p.add_argument("--grades", default=None, help="grade table INI file (default: built-in)")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("grade", parents=[common], help="grade a porosity percentage")
    p.add_argument("stone_type")
    p.add_argument("porosity", type=float)
    p.add_argument("--grades", default=None)
    p.set_defaults(func=cmd_grade)

    p = sub.add_parser("evaluate", parents=[common], help="window-level metrics of a pattern against truth")
    p.add_argument("pattern")
    p.add_argument("truth")
    p.add_argument("--window", type=int, default=16)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("synth", parents=[common], help="synthetic texture with disc pores")
    p.add_argument("kind", choices=sorted(TEXTURES))
    p.add_argument("image", help="output texture PGM")
    p.add_argument("truth", help="output truth-mask PGM")
    p.add_argument("--size", type=int, default=512, help="width (and height unless --height)")
    p.add_argument("--height", type=int, default=None)
    p.add_argument("--pores", type=int, default=0, help="number of random disc pores")
    p.add_argument("--pore", type=_parse_pore, action="append", help="explicit pore ROW,COL,RADIUS (repeatable)")
    p.add_argument("--radius-min", type=int, default=10)
    p.add_argument("--radius-max", type=int, default=20)
    p.add_argument("--contrast", type=float, default=60.0)
    p.add_argument("--noise", type=float, default=1.0)
    p.add_argument("--amplitude", type=float, default=40.0)
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_synth)

    p = sub.add_parser("bench", parents=[common], help="time 1D vs 2D LBP feature extraction")
    p.add_argument("image", nargs="?", help="default: synthetic 512x512 texture")
    p.add_argument("--size", type=int, default=512)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--window", type=int, default=16)
    p.add_argument("--segment-length", type=int, default=8)
    p.add_argument("--repeats", type=int, default=5)
    p.set_defaults(func=cmd_bench)
    return parser


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    with warnings.catch_warnings():
        warnings.simplefilter("always")
        warnings.showwarning = _show_warning
        try:
            return args.func(args)
        except BrokenPipeError:
            # downstream closed early (e.g. piped into head); not an error
            os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
            return EXIT_OK
        except (FormatError, OSError) as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_IO
        except (GeometryError, KeyError, ValueError) as exc:
            msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else exc
            print(f"error: {msg}", file=sys.stderr)
            return EXIT_DOMAIN


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
