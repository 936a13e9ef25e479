"""
Command line driver.

    python -m run complete samples/programs/two_clause.lp --cet-depth 1
    python -m run entail samples/programs/two_clause.lp "?- p(f(a))."
    python -m run solve samples/formulas/successor_exists.fo --max-roots 0

Documents go to stdout, logs to stderr (and runs/logs unless --no-log-file).
Exit codes: 0 for every clean result, 2 for parse errors, 3 for validation
errors, 4 for input files that cannot be read.
"""
import argparse
import json
import logging
import sys
from dataclasses import asdict
from datetime import datetime
from pathlib import Path
from time import time

from logic.errors import ParseError, ValidationError
from logic.parser import parse_formula, parse_language, parse_program, parse_query
from logic.syntax import Signature, format_formula, infer_signature, validate

from settings import BOUNDS_SETTINGS, Parameters, Settings
SETTINGS = Settings.get_settings()

COMMANDS = [
    'complete', 'simplify', 'emit-sns', 'check-domain', 'eval', 'solve',
    'entail', 'plot',
]


def read_text(argument: str) -> str:
    """Contents of the file named by the argument, or the argument itself
    when no such file exists (inline formulas and queries).
    """
    path = Path(argument)
    if path.is_file():
        return path.read_text()
    return argument


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='run',
        description='Clark completion of monadic programs, its reduction to '
                    'S(2n+1)S and a bounded model finder.',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('--format', choices=SETTINGS.OUTPUT_FORMATS,
                        default=Parameters.OUTPUT_FORMAT)
    common.add_argument('--language', help='file with #constant, #function '
                        'and #predicate directives fixing L')
    common.add_argument('--save', action='store_true',
                        help='also write the document under runs/results')
    common.add_argument('--no-log-file', action='store_true',
                        help='no log or parameter files under runs/')
    common.add_argument('--no-timing', action='store_true',
                        help='leave timing out of the document')
    common.add_argument('--verbose', action='store_true')
    common.add_argument('--dump-automata', action='store_true',
                        help='log the automata of the evaluation')

    search = argparse.ArgumentParser(add_help=False)
    for name, default in BOUNDS_SETTINGS.items():
        search.add_argument(
            f"--{name.replace('_', '-')}", dest=name,
            type=float if isinstance(default, float) else int,
            default=None, help=f"search bound (default {default})",
        )

    commands = parser.add_subparsers(dest='command', required=True)
    complete = commands.add_parser('complete', parents=[common])
    complete.add_argument('program')
    complete.add_argument('--cet-depth', type=int, default=Parameters.CET_DEPTH)

    for name in ('simplify', 'emit-sns'):
        command = commands.add_parser(name, parents=[common])
        command.add_argument('formula', help='file or inline formula')

    check = commands.add_parser('check-domain', parents=[common])
    check.add_argument('model')

    evaluate = commands.add_parser('eval', parents=[common])
    evaluate.add_argument('model')
    evaluate.add_argument('formula', help='file or inline formula')

    solve = commands.add_parser('solve', parents=[common, search])
    solve.add_argument('formula', help='file or inline formula')

    entail = commands.add_parser('entail', parents=[common, search])
    entail.add_argument('program')
    entail.add_argument('query', help='file or inline ?- L1, ..., Lk.')

    plot = commands.add_parser('plot', parents=[common])
    plot.add_argument('model')
    plot.add_argument('--depth', type=int, default=Parameters.PLOT_DEPTH)
    plot.add_argument('--output')
    return parser


def _language(args) -> Signature | None:
    if args.language is None:
        return None
    return parse_language(Path(args.language).read_text())


def _formula_and_signature(args):
    sig = _language(args)
    formula = parse_formula(read_text(args.formula), sig)
    return formula, sig if sig is not None else infer_signature(formula)


def _bounds(args):
    from engine.search import Bounds
    return Bounds().override(
        **{name: getattr(args, name) for name in BOUNDS_SETTINGS}
    )


def _render(args, document: dict, text: str) -> str:
    if args.format == 'json':
        return json.dumps(document, indent=2)
    return text


def run_command(args, timestamp: str) -> tuple[str, list]:
    """Executes one subcommand.

    Args:
    - args (argparse.Namespace): Parsed command line
    - timestamp (str): Run timestamp, used for saved files

    Returns:
    - tuple: The output document and a list of (file name, text) artefacts
        to save with --save
    """
    artefacts = []
    match args.command:
        case 'complete':
            from logic.completion import (
                cet_axioms, completion_defs, completion_document,
            )
            program, sig = parse_program(
                Path(args.program).read_text(), _language(args)
            )
            cet = cet_axioms(sig, args.cet_depth) if args.cet_depth > 0 else None
            output = completion_document(
                completion_defs(program, sig), cet, args.format
            )

        case 'simplify':
            from logic.simpleform import simplify
            formula, sig = _formula_and_signature(args)
            result = format_formula(simplify(formula))
            output = _render(
                args, {'signature': sig.to_dict(), 'formula': result}, result
            )

        case 'emit-sns':
            from reduction.sns import assemble_sentence
            from reduction.sns_text import emit
            formula, sig = _formula_and_signature(args)
            sentence = emit(assemble_sentence(formula, sig))
            output = _render(
                args, {'signature': sig.to_dict(), 'sentence': sentence},
                sentence,
            )

        case 'check-domain':
            from engine.checker import SetEnv, check_domain, dump_environment
            from engine.models import embed, load_model
            model = load_model(Path(args.model).read_text())
            domain = embed(model)
            if args.dump_automata:
                dump_environment(SetEnv.build(domain))
            value = check_domain(domain, model.sig)
            output = _render(args, {'domain': value}, str(value).lower())

        case 'eval':
            from engine.checker import (
                Evaluator, SetEnv, dump_environment, sentence_mod,
            )
            from engine.models import load_model
            model = load_model(Path(args.model).read_text())
            formula = parse_formula(read_text(args.formula), model.sig)
            env = SetEnv.for_model(model)
            automaton = Evaluator(model.sig.n).compile(
                sentence_mod(formula, model.sig), env
            )
            if args.dump_automata:
                dump_environment(env, automaton)
            value = automaton.truth()
            output = _render(args, {'value': value}, str(value).lower())

        case 'solve':
            from engine.models import dump_model
            from engine.search import solve
            formula, sig = _formula_and_signature(args)
            verdict = solve(formula, sig, _bounds(args), args.dump_automata)
            timing = not args.no_timing
            output = _render(
                args, verdict.to_dict(timing), verdict.to_text(timing)
            )
            if verdict.witness is not None:
                artefacts.append(
                    (f"{timestamp}_model.json", dump_model(verdict.witness))
                )

        case 'entail':
            from engine.models import dump_model
            from engine.search import entail
            sig = _language(args)
            query, _ = parse_query(read_text(args.query), sig)
            program, sig = parse_program(Path(args.program).read_text(), sig)
            # Without a fixed language the query may add symbols of its own
            if sig.inferred:
                sig = infer_signature(program, query)
            validate(query, sig)
            report = entail(program, query, sig, _bounds(args))
            timing = not args.no_timing
            output = _render(
                args, report.to_dict(timing), report.to_text(timing)
            )
            for name, direction in (('query', report.positive),
                                    ('negation', report.negative)):
                if direction.verdict.witness is not None:
                    artefacts.append((
                        f"{timestamp}_{name}_model.json",
                        dump_model(direction.verdict.witness),
                    ))

        case 'plot':
            from engine.models import load_model
            from visualization.plot_model import plot_model
            model = load_model(Path(args.model).read_text())
            path = plot_model(model, args.depth, args.output)
            output = _render(args, {'plot': str(path)}, str(path))

    return output, artefacts


def save_results(args, timestamp: str, output: str, artefacts: list):
    """Writes the document and the witnesses under runs/results."""
    results_dir = SETTINGS.RESULTS_DIR
    results_dir.mkdir(parents=True, exist_ok=True)
    suffix = '.json' if args.format == 'json' else '.txt'
    (results_dir / f"{timestamp}_{args.command}{suffix}").write_text(output + '\n')
    for name, text in artefacts:
        (results_dir / name).write_text(text + '\n')


def save_parameters(args, timestamp: str):
    """Stores the run configuration like every run does under runs/parameters."""
    parameters_dir = SETTINGS.PARAMETERS_DIR
    parameters_dir.mkdir(parents=True, exist_ok=True)
    params = Parameters(
        OUTPUT_FORMAT=args.format,
        CET_DEPTH=getattr(args, 'cet_depth', Parameters.CET_DEPTH),
        PLOT_DEPTH=getattr(args, 'depth', Parameters.PLOT_DEPTH),
        LOG_TO_FILE=not args.no_log_file,
    )
    params_dict = asdict(params)
    params_dict['TIMESTAMP'] = timestamp
    params_dict['COMMAND'] = args.command
    params_dict['ARGUMENTS'] = {
        key: value for key, value in vars(args).items()
        if isinstance(value, (str, int, float, bool)) or value is None
    }
    json_file_path = (parameters_dir / f"{timestamp}_{args.command}") \
        .with_suffix('.json')
    with open(json_file_path, 'w') as f:
        json.dump(params_dict, f, indent=2)


def main(argv: list[str] | None = None) -> int:
    from engine.logger import setup_logger

    args = build_parser().parse_args(argv)
    time_start = time()
    timestamp: str = datetime.now().strftime(SETTINGS.TIMESTAMP_FORMAT)

    level = logging.DEBUG if args.verbose else logging.INFO
    logger = setup_logger(timestamp, args.command, not args.no_log_file, level)
    if not args.no_log_file:
        save_parameters(args, timestamp)

    try:
        output, artefacts = run_command(args, timestamp)
    except ParseError as e:
        logger.error(f"Parse error: {e}")
        return 2
    except ValidationError as e:
        logger.error(f"Validation error: {e}")
        return 3
    except OSError as e:
        logger.error(f"Cannot read input: {e}")
        return 4

    print(output)
    if args.save:
        save_results(args, timestamp, output, artefacts)

    logger.info(f"Run took {time() - time_start:.2f} seconds.")
    return 0


if __name__ == "__main__":
    sys.exit(main())
