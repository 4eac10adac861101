"""Command-line front end.

Every subcommand has a human output mode and a --json mode carrying the
same data plus metadata; JSON payloads match the schema files shipped in
klab/schemas.  Exit codes: 0 success, 1 domain error (JSON mode emits an
error/v1 payload), 2 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import __version__
from .abelian import Group, parse_element, quotient
from .cache import FORMAT_VERSION, AtomCache
from .config import RunConfig
from .errors import InvalidInputError, KlabError
from .krull import OMEGA, KrullPresentation, dedekind_model, localize
from .lengths import (
    aamp_check,
    delta_of_monoid,
    delta_star,
    half_factorial_check,
    length_set,
    max_delta_star_formula,
)
from .realize import RealizationTask, aamp_survey, witness_search
from .zerosum import Sequence, Support, atoms


def _resolve_atoms(support, cap, config):
    if not config.cache_enabled:
        return atoms(support, cap)
    cache = AtomCache(config.cache_dir)
    hit = cache.get(support, cap)
    if hit is not None:
        return hit
    result = atoms(support, cap)
    cache.put(support, cap, result)
    return result


def _group(args) -> Group:
    return Group.parse(args.group)


def _support(args, group) -> Support:
    return Support.parse(args.support, group)


def _cap(args, config) -> int | None:
    if getattr(args, "cap", None) is not None:
        return args.cap
    return config.default_cap


def _int_list(text: str, what: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip() != ""]
    except ValueError:
        raise InvalidInputError(f"{what} must be a comma-separated list of integers") from None


def cmd_group(args, config):
    g = Group.parse(args.spec)
    payload = {
        "schema": "group/v1",
        "spec": g.spec_string(),
        "free_rank": g.free_rank,
        "invariant_factors": list(g.invariant_factors),
        "order": g.order(),
        "exponent": g.exponent(),
        "rank": g.rank(),
    }
    return payload, g.spec_string()


def cmd_quotient(args, config):
    g = _group(args)
    import ast

    try:
        values = ast.literal_eval(args.relations.strip())
    except (ValueError, SyntaxError):
        raise InvalidInputError(f"cannot parse relations {args.relations!r}") from None
    if not isinstance(values, (list, tuple)):
        raise InvalidInputError("relations must be a list of elements")
    from .abelian import element_from_value

    relations = [element_from_value(v, g) for v in values]
    q, proj = quotient(g, relations)
    images = [proj(x).literal() for x in g.generators()]
    payload = {
        "schema": "quotient/v1",
        "source": g.spec_string(),
        "relations": [x.literal() for x in relations],
        "group": q.spec_string(),
        "generator_images": images,
    }
    return payload, q.spec_string()


def _presentation_payload(p: KrullPresentation) -> dict:
    return p.to_json_dict()


def _presentation_human(p: KrullPresentation) -> str:
    lines = [f"class group: {p.class_group.spec_string()}"]
    for e in p.prime_classes:
        count = "omega" if e.count is OMEGA else e.count
        lines.append(f"  class {e.element.literal(short=True)}: {count} primes")
    if not p.fully_populated:
        lines.append("  (not every class is populated)")
    return "\n".join(lines)


def cmd_model(args, config):
    groups = [Group.parse(s) for s in args.groups.split(",") if s.strip()]
    p = dedekind_model(groups, box=args.box)
    return _presentation_payload(p), _presentation_human(p)


def _load_presentation(args) -> KrullPresentation:
    if args.presentation is not None:
        if args.presentation == "-":
            data = json.load(sys.stdin)
        else:
            try:
                data = json.loads(Path(args.presentation).read_text())
            except OSError as exc:
                raise InvalidInputError(f"cannot read presentation: {exc}") from None
            except json.JSONDecodeError as exc:
                raise InvalidInputError(f"presentation is not valid JSON: {exc}") from None
        return KrullPresentation.from_json_dict(data)
    if args.model is not None:
        groups = [Group.parse(s) for s in args.model.split(",") if s.strip()]
        return dedekind_model(groups, box=args.box)
    raise InvalidInputError("pass --presentation FILE or --model SPECS")


def cmd_localize(args, config):
    p = _load_presentation(args)
    classes = []
    primes = []
    for item in args.invert or []:
        kind, _, value = item.partition("=")
        if kind == "class" and value:
            classes.append(parse_element(value, p.class_group))
        elif kind == "prime" and value:
            primes.append(value)
        else:
            raise InvalidInputError(
                f"bad --invert {item!r}; use class=<element> or prime=<label>"
            )
    q, _ = localize(p, classes=classes, primes=primes)
    return _presentation_payload(q), _presentation_human(q)


def cmd_atoms(args, config):
    g = _group(args)
    support = _support(args, g)
    result = _resolve_atoms(support, _cap(args, config), config)
    payload = result.to_json_dict()
    lines = [f"{len(result)} atoms over {support.literal(short=True)} in {g.spec_string()}"]
    lines += [f"  {a.literal(short=True)}" for a in result]
    lines.append(f"complete: {result.complete} (cap {result.cap_used})")
    return payload, "\n".join(lines)


def cmd_lengths(args, config):
    g = _group(args)
    if args.support is not None:
        support = _support(args, g)
        seq = Sequence.parse(args.sequence, g, support)
    else:
        seq = Sequence.parse(args.sequence, g)
        support = seq.support
    atom_set = _resolve_atoms(support, _cap(args, config), config)
    report = length_set(
        seq,
        atom_set,
        include_factorizations=args.full,
        allow_incomplete=not atom_set.complete,
    )
    payload = {
        "schema": "lengths/v1",
        "group": g.spec_string(),
        "support": [e.literal() for e in support.elements],
        "sequence": seq.literal(short=True),
        "length_set": list(report.length_set),
        "delta_set": list(report.delta_set),
        "factorization_counts": {str(k): v for k, v in sorted(report.factorization_counts.items())},
        "complete": report.complete,
        "cap_used": atom_set.cap_used,
        "factorizations": [list(f.atom_indices) for f in report.factorizations]
        if report.factorizations is not None
        else None,
    }
    human = (
        f"L = {{{', '.join(map(str, report.length_set))}}}  "
        f"delta = {{{', '.join(map(str, report.delta_set))}}}  "
        f"counts = {report.factorization_counts}"
    )
    if not report.complete:
        human += f"  [lower bound: atoms capped at {atom_set.cap_used}]"
    return payload, human


def cmd_delta(args, config):
    g = _group(args)
    support = _support(args, g)
    report = delta_of_monoid(support, _cap(args, config))
    payload = {
        "schema": "delta/v1",
        "group": g.spec_string(),
        "support": [e.literal() for e in support.elements],
        **report.to_json_dict(),
    }
    human = (
        f"distances up to cap {report.element_cap}: "
        f"{{{', '.join(map(str, report.distances))}}}"
    )
    return payload, human


def cmd_delta_star(args, config):
    g = _group(args)
    report = delta_star(g, _cap(args, config), guard=config.guard_size, force=args.force)
    if g.is_finite and g.order() >= 3:
        formula = max_delta_star_formula(g)
    else:
        formula = None
    payload = {
        "schema": "delta_star/v1",
        "group": g.spec_string(),
        "formula_max": formula,
        **report.to_json_dict(),
    }
    human = (
        f"minimal distances of {g.spec_string()} at cap {report.element_cap}: "
        f"{{{', '.join(map(str, report.values))}}} (max: {report.max_value})"
    )
    return payload, human


def cmd_aamp(args, config):
    values = _int_list(args.set, "--set")
    witness = aamp_check(values, args.d, args.bound)
    payload = {
        "schema": "aamp/v1",
        "set": sorted(set(values)),
        "d": args.d,
        "bound": args.bound,
        "witness": witness.to_json_dict() if witness else None,
    }
    if witness:
        human = (
            f"AAMP with difference {args.d} and bound {args.bound}: yes "
            f"(y={witness.y}, period={list(witness.d_set)})"
        )
    else:
        human = f"AAMP with difference {args.d} and bound {args.bound}: no"
    return payload, human


def cmd_aamp_survey(args, config):
    g = _group(args)
    report = aamp_survey(g, _cap(args, config), guard=config.guard_size, force=args.force)
    payload = {"schema": "aamp_survey/v1", **report.to_json_dict()}
    human = (
        f"{report.sequences_checked} sequences over {g.spec_string()} "
        f"(cap {report.element_cap}): empirical bound {report.empirical_bound}, "
        f"failures: {len(report.failures)}"
    )
    return payload, human


def cmd_halffactorial(args, config):
    g = _group(args)
    support = _support(args, g)
    report = half_factorial_check(support, _cap(args, config))
    payload = {
        "schema": "halffactorial/v1",
        "group": g.spec_string(),
        "support": [e.literal() for e in support.elements],
        **report.to_json_dict(),
    }
    if report.half_factorial_at_cap:
        human = f"half-factorial up to cap {report.element_cap} (evidence, not proof)"
    else:
        seq, lengths = report.counterexample
        human = f"not half-factorial: {seq.literal(short=True)} has lengths {list(lengths)}"
    return payload, human


def cmd_realize(args, config):
    lengths_list = _int_list(args.lengths, "--lengths")
    mults = _int_list(args.mult, "--mult") if args.mult else [1] * len(lengths_list)
    if args.family:
        family = tuple(Group.parse(s) for s in args.family.split(",") if s.strip())
        task = RealizationTask(
            tuple(lengths_list),
            tuple(mults),
            family,
            support_cap=args.support_cap,
            length_cap=args.length_cap,
        )
    else:
        task = RealizationTask(
            tuple(lengths_list),
            tuple(mults),
            support_cap=args.support_cap,
            length_cap=args.length_cap,
        )
    witness = witness_search(task)
    payload = {
        "schema": "realize/v1",
        "lengths": list(task.target_lengths),
        "multiplicities": list(task.multiplicities),
        "family": [g.spec_string() for g in task.group_family],
        "witness": witness.to_json_dict() if witness else None,
        "caps": {"support": task.support_cap, "length": task.length_cap},
    }
    if witness:
        human = (
            f"witness over {witness.group.spec_string()}: "
            f"{witness.sequence.literal(short=True)} "
            f"counts={witness.report.factorization_counts}"
        )
    else:
        human = "no witness within the search caps (not a nonexistence claim)"
    return payload, human


def cmd_cache(args, config):
    cache = AtomCache(config.cache_dir)
    if args.action == "clear":
        removed = cache.clear()
        payload = {
            "schema": "cache_info/v1",
            "directory": str(config.cache_dir),
            "entries": 0,
            "bytes": 0,
            "format_version": FORMAT_VERSION,
        }
        return payload, f"removed {removed} entries from {config.cache_dir}"
    entries = cache.entries()
    payload = {
        "schema": "cache_info/v1",
        "directory": str(config.cache_dir),
        "entries": len(entries),
        "bytes": cache.total_bytes(),
        "format_version": FORMAT_VERSION,
    }
    return payload, f"{len(entries)} entries in {config.cache_dir}"


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON payload")
    common.add_argument("--cache-dir", help="cache directory (env: KLAB_CACHE_DIR)")
    common.add_argument("--no-cache", action="store_true", help="disable the atom cache")

    parser = argparse.ArgumentParser(
        prog="klab",
        description="Exact class-group and zero-sum factorization calculus.",
    )
    parser.add_argument("--version", action="version", version=f"klab {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("group", parents=[common], help="canonical form of a group spec")
    p.add_argument("--spec", required=True, help='group spec, e.g. "C2xC3" or "Z^2 x C4"')
    p.set_defaults(handler=cmd_group)

    p = sub.add_parser("quotient", parents=[common], help="quotient of a group by relations")
    p.add_argument("--group", required=True)
    p.add_argument("--relations", required=True, help='element list, e.g. "[(2,0),(0,3)]"')
    p.set_defaults(handler=cmd_quotient)

    p = sub.add_parser("model", parents=[common], help="class-group model with omega primes everywhere")
    p.add_argument("--groups", required=True, help='comma-separated specs, e.g. "C2,C3"')
    p.add_argument("--box", type=int, help="free-coordinate box for class enumeration")
    p.set_defaults(handler=cmd_model)

    p = sub.add_parser("localize", parents=[common], help="invert primes of a presentation")
    p.add_argument("--presentation", help="presentation JSON file, or - for stdin")
    p.add_argument("--model", help="build the presentation from comma-separated specs")
    p.add_argument("--box", type=int)
    p.add_argument(
        "--invert",
        action="append",
        help="class=<element> or prime=<label>; repeatable",
    )
    p.set_defaults(handler=cmd_localize)

    p = sub.add_parser("atoms", parents=[common], help="minimal zero-sum sequences over a support")
    p.add_argument("--group", required=True)
    p.add_argument("--support", required=True, help='element list, e.g. "[1,2]"')
    p.add_argument("--cap", type=int)
    p.set_defaults(handler=cmd_atoms)

    p = sub.add_parser("lengths", parents=[common], help="set of lengths of a sequence")
    p.add_argument("--group", required=True)
    p.add_argument("--support")
    p.add_argument("--sequence", required=True, help='sequence literal, e.g. "[1^3,2^3]"')
    p.add_argument("--cap", type=int)
    p.add_argument("--full", action="store_true", help="include the factorization list")
    p.set_defaults(handler=cmd_lengths)

    p = sub.add_parser("delta", parents=[common], help="distance set of a support up to a cap")
    p.add_argument("--group", required=True)
    p.add_argument("--support", required=True)
    p.add_argument("--cap", type=int)
    p.set_defaults(handler=cmd_delta)

    p = sub.add_parser("delta-star", parents=[common], help="minimal distances over all subsets")
    p.add_argument("--group", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--force", action="store_true", help="override the subset-sweep guard")
    p.set_defaults(handler=cmd_delta_star)

    p = sub.add_parser("aamp", parents=[common], help="AAMP decomposition of a finite set")
    p.add_argument("--set", required=True, help="comma-separated integers")
    p.add_argument("--d", type=int, required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(handler=cmd_aamp)

    p = sub.add_parser("aamp-survey", parents=[common], help="AAMP structure of all length sets")
    p.add_argument("--group", required=True)
    p.add_argument("--cap", type=int)
    p.add_argument("--force", action="store_true")
    p.set_defaults(handler=cmd_aamp_survey)

    p = sub.add_parser("halffactorial", parents=[common], help="are all length sets singletons")
    p.add_argument("--group", required=True)
    p.add_argument("--support", required=True)
    p.add_argument("--cap", type=int)
    p.set_defaults(handler=cmd_halffactorial)

    p = sub.add_parser("realize", parents=[common], help="search for a prescribed length set")
    p.add_argument("--lengths", required=True, help="comma-separated targets, all >= 2")
    p.add_argument("--mult", help="comma-separated multiplicities (default all 1)")
    p.add_argument("--family", help="comma-separated group specs")
    p.add_argument("--support-cap", type=int)
    p.add_argument("--length-cap", type=int)
    p.set_defaults(handler=cmd_realize)

    p = sub.add_parser("cache", parents=[common], help="inspect or clear the atom cache")
    p.add_argument("action", choices=["info", "clear"], nargs="?", default="info")
    p.set_defaults(handler=cmd_cache)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    json_mode = getattr(args, "json", False)
    try:
        config = RunConfig.load(
            cache_dir=getattr(args, "cache_dir", None),
            no_cache=getattr(args, "no_cache", False),
            json_output=json_mode,
        )
        payload, human = args.handler(args, config)
    except KlabError as exc:
        if json_mode:
            error = {"schema": "error/v1", "error": exc.slug, "message": str(exc)}
            print(json.dumps(error, indent=2, sort_keys=True))
        else:
            print(f"error ({exc.slug}): {exc}", file=sys.stderr)
        return 1
    if config.json_output:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print(human)
    return 0


if __name__ == "__main__":
    sys.exit(main())
