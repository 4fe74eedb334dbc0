"""
Command-line front end
Every library operation as a subcommand; exit 0 on success, 1 on a failed
precondition or check, 2 on I/O and parse errors
"""
import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from __version__ import APP_NAME, EXECUTABLE_NAME, VERSION_STRING
from errors import LapMotifError, ParseError
from exact_balance import (
    VertexFunction,
    adjacency_kernel,
    parse_function,
    parse_rational,
    serialize_function,
    verify_eigenpair_exact,
)
from graph_core import (
    Graph,
    Motif,
    make_chain,
    make_complete,
    make_cycle,
    make_petal,
    make_star,
    read_graph,
    serialize_graph,
    write_graph,
    write_text_atomic,
)
from operations import (
    Construction,
    attach_chain2,
    connect_pairs_with_function,
    count_subgraph_embeddings,
    double_edge,
    double_graph,
    double_motif,
    double_motif_general,
    double_vertex,
    figure_eight,
    join_eigenfunctions,
    join_graphs,
    localized_eigenfunction_for_doubling,
    merge_pairs_with_function,
    split_graph,
)
from spectral import spectral_bipartite_test, summarize_graph
from synthesis import (
    BLOCK_KINDS,
    Block,
    basic_block,
    embed_with_eigenfunction,
    join_blocks,
    negate_block,
    read_block,
    realize_pair,
    rotate_block,
    write_block,
)

logger = logging.getLogger(__name__)

GENERATORS: Dict[str, Tuple[int, Callable[..., Graph]]] = {
    "chain": (1, make_chain),
    "cycle": (1, make_cycle),
    "complete": (1, make_complete),
    "petal": (1, make_petal),
    "star": (1, make_star),
    "figure-eight": (2, lambda a, b: figure_eight(a, b).graph),
}


# Argument helpers

def _parse_ids(text: str) -> List[int]:
    try:
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError as e:
        raise ParseError(f"expected comma-separated vertex ids, got {text!r}") from e


def _parse_pairs(text: str) -> List[Tuple[int, int]]:
    pairs = []
    for item in text.split(','):
        left, sep, right = item.partition(':')
        if not sep:
            raise ParseError(f"expected pairs of the form p:q, got {item!r}")
        try:
            pairs.append((int(left), int(right)))
        except ValueError as e:
            raise ParseError(f"expected pairs of the form p:q, got {item!r}") from e
    return pairs


def _parse_side(text: str) -> Tuple[Tuple[int, int], int]:
    edge, sep, side = text.partition('=')
    u, dash, v = edge.partition('-')
    if not sep or not dash:
        raise ParseError(f"expected an edge routing of the form u-v=1, got {text!r}")
    try:
        return (int(u), int(v)), int(side)
    except ValueError as e:
        raise ParseError(f"expected an edge routing of the form u-v=1, got {text!r}") from e


def _read_function(path: str, n: int) -> VertexFunction:
    try:
        text = Path(path).read_text(encoding='utf-8')
    except OSError as e:
        raise ParseError(f"cannot read function file {path}: {e}") from e
    except UnicodeDecodeError as e:
        raise ParseError(f"function file {path} is not valid UTF-8: {e}") from e
    return parse_function(text, n)


def _emit(args, payload: dict, text: str):
    if getattr(args, 'json', False):
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _write_outputs(args, construction: Construction):
    write_graph(args.output, construction.graph)
    if args.emit_function:
        if construction.function is None:
            logger.warning("operation produced no function; %s not written", args.emit_function)
        else:
            write_text_atomic(args.emit_function, serialize_function(construction.function) + "\n")


def _construction_payload(construction: Construction) -> dict:
    return {
        "vertices": construction.graph.vertex_count,
        "edges": construction.graph.edge_count,
        "eigenvalue": None if construction.eigenvalue is None else str(construction.eigenvalue),
        "id_map": construction.id_map_json(),
    }


def _report_construction(args, construction: Construction):
    _write_outputs(args, construction)
    payload = _construction_payload(construction)
    text = f"{payload['vertices']} vertices, {payload['edges']} edges"
    if construction.eigenvalue is not None:
        text += f", eigenvalue {construction.eigenvalue} verified"
    _emit(args, payload, text + f"\nid map: {json.dumps(payload['id_map'], sort_keys=True)}")


def _report_block(args, block: Block):
    write_block(args.output, block)
    _emit(args, block.metadata(), f"block realizing ({block.n}, {block.m}) with p0 = {block.p0}, "
                                  f"{block.graph.vertex_count} vertices")


# Subcommands

def _cmd_gen(args) -> int:
    arity, generator = GENERATORS[args.kind]
    if len(args.params) != arity:
        raise ParseError(f"gen {args.kind} takes {arity} integer parameter(s)")
    g = generator(*args.params)
    if args.output:
        write_graph(args.output, g)
    else:
        print(serialize_graph(g))
    return 0


def _cmd_spectrum(args) -> int:
    g = read_graph(args.input)
    summary = summarize_graph(g, args.tol)
    if summary.spectrum is None:
        raise LapMotifError("graph has isolated vertices; the normalized Laplacian is undefined")
    spectrum = summary.spectrum
    bipartite = spectral_bipartite_test(spectrum, 1e-7)
    payload = spectrum.to_json(include_eigenvectors=args.eigenvectors)
    lines = [f"{'eigenvalue':>20}  multiplicity"]
    lines += [f"{value:>20.12f}  {count}" for value, count in spectrum.groups()]
    lines.append(
        f"connected: {summary.connected}  bipartite: {bool(bipartite)}  "
        f"mirror-symmetric: {bipartite.mirror_symmetric}  m1 (exact): {summary.eigenvalue_one_multiplicity}"
    )
    if args.eigenvectors:
        for value, column in zip(spectrum.values, spectrum.eigenfunctions().T):
            lines.append(f"{value:.12f}: " + " ".join(f"{x:.12f}" for x in column))
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_m1(args) -> int:
    g = read_graph(args.input)
    kernel = adjacency_kernel(g)
    basis = [[str(x) for x in u] for u in kernel.basis]
    if args.basis:
        write_text_atomic(args.basis, "".join(" ".join(row) + "\n" for row in basis))
    _emit(args, {"m1": kernel.multiplicity, "basis": basis}, str(kernel.multiplicity))
    return 0


def _cmd_verify(args) -> int:
    g = read_graph(args.input)
    f = _read_function(args.function, g.vertex_count)
    ok = verify_eigenpair_exact(g, f, args.eigenvalue)
    _emit(args, {"verified": ok, "eigenvalue": str(args.eigenvalue)},
          f"{'ok' if ok else 'FAILED'}: eigenvalue {args.eigenvalue}")
    return 0 if ok else 1


def _cmd_op(args) -> int:
    g = read_graph(args.input)
    if args.operation == "double-vertex":
        construction = double_vertex(g, args.vertex)
    elif args.operation == "double-motif":
        motif = Motif(g, tuple(_parse_ids(args.motif)))
        if args.values is None:
            construction = double_motif(g, motif)
        else:
            f_sigma = VertexFunction(tuple(parse_rational(x) for x in args.values.split(',')))
            eigenvalue = args.eigenvalue if args.eigenvalue is not None else 1
            if eigenvalue == 1:
                doubled = double_motif(g, motif)
                function = localized_eigenfunction_for_doubling(g, motif, f_sigma)
                construction = Construction(doubled.graph, function, eigenvalue, doubled.id_map)
            else:
                construction = double_motif_general(g, motif, f_sigma, eigenvalue)
    elif args.operation == "double-edge":
        return _report_edge_doubling(args, g)
    elif args.operation == "double-graph":
        construction = double_graph(g)
    elif args.operation == "split":
        f1 = _read_function(args.function, g.vertex_count)
        edge_side = dict(_parse_side(item) for item in args.side)
        construction = split_graph(
            g, _parse_ids(args.sigma0), _parse_ids(args.sigma1), _parse_ids(args.sigma2), edge_side, f1
        )
    elif args.operation == "join":
        other = read_graph(args.other)
        construction = join_graphs(g, args.at, other, args.other_at)
        if args.function or args.other_function:
            f1 = _read_function(args.function, g.vertex_count) if args.function \
                else VertexFunction.zeros(g.vertex_count)
            f2 = _read_function(args.other_function, other.vertex_count) if args.other_function \
                else VertexFunction.zeros(other.vertex_count)
            eigenvalue = args.eigenvalue if args.eigenvalue is not None else 1
            function = join_eigenfunctions(g, f1, other, f2, eigenvalue, args.at, args.other_at)
            construction = Construction(construction.graph, function, eigenvalue, construction.id_map)
    elif args.operation == "attach-chain2":
        construction = attach_chain2(g, _read_function(args.function, g.vertex_count), args.vertex)
    elif args.operation == "merge":
        fn = _read_function(args.function, g.vertex_count)
        construction = merge_pairs_with_function(g, _parse_pairs(args.pairs), fn)
    else:
        fn = _read_function(args.function, g.vertex_count)
        construction = connect_pairs_with_function(g, _parse_pairs(args.pairs), fn)
    _report_construction(args, construction)
    return 0


def _report_edge_doubling(args, g: Graph) -> int:
    result = double_edge(g, *args.edge)
    write_graph(args.output, result.graph)
    first = result.eigenpairs[0]
    if args.emit_function:
        if first.function is not None:
            write_text_atomic(args.emit_function, serialize_function(first.function) + "\n")
        else:
            logger.warning("eigenfunction entries are irrational; %s not written", args.emit_function)
    payload = {
        "vertices": result.graph.vertex_count,
        "edges": result.graph.edge_count,
        "id_map": Construction(result.graph, id_map=result.id_map).id_map_json(),
        "eigenpairs": [
            {
                "symbol": pair.symbol,
                "value": pair.value,
                "exact": None if pair.exact is None else str(pair.exact),
                "residual": pair.residual,
                "vector": pair.vector.tolist(),
            }
            for pair in result.eigenpairs
        ],
    }
    lines = [f"{result.graph.vertex_count} vertices, {result.graph.edge_count} edges"]
    lines += [f"eigenvalue {pair.symbol} = {pair.value:.12f} (residual {pair.residual:.2e})"
              for pair in result.eigenpairs]
    _emit(args, payload, "\n".join(lines))
    return 0


def _cmd_synth(args) -> int:
    if args.operation == "embed":
        sigma = read_graph(args.input)
        construction = embed_with_eigenfunction(sigma, _read_function(args.function, sigma.vertex_count))
        if not args.emit_function:
            args.emit_function = f"{args.output}.fn"
        _report_construction(args, construction)
        return 0
    if args.operation == "block":
        block = basic_block(args.kind, args.count)
    elif args.operation == "rotate":
        block = rotate_block(read_block(args.input))
    elif args.operation == "negate":
        block = negate_block(read_block(args.input))
    elif args.operation == "join":
        block = join_blocks([read_block(path) for path in args.input])
    else:
        block = realize_pair(args.n, args.m)
    _report_block(args, block)
    return 0


def _cmd_count(args) -> int:
    g = read_graph(args.input)
    pattern = read_graph(args.pattern)
    noninduced = count_subgraph_embeddings(g, pattern)
    induced = count_subgraph_embeddings(g, pattern, induced=True)
    _emit(args, {"count": noninduced, "induced": induced}, f"{noninduced} (induced: {induced})")
    return 0


def _cmd_view(args) -> int:
    from main_window import launch_viewer
    return launch_viewer(args.input)


# Parser

def _add_output_flags(parser: argparse.ArgumentParser, function_flag: bool = True):
    parser.add_argument('-o', '--output', required=True, help="output edge-list file")
    if function_flag:
        parser.add_argument('--emit-function', help="write the constructed function to this file")
    parser.add_argument('--json', action='store_true', help="machine-readable output")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog=EXECUTABLE_NAME,
        description=f"{APP_NAME}: normalized Laplacian spectra and eigenvalue-1 constructions",
    )
    parser.add_argument('--version', action='version', version=f"%(prog)s {VERSION_STRING}")
    parser.add_argument('-v', '--verbose', action='store_true', help="debug logging on stderr")
    commands = parser.add_subparsers(dest='command', required=True)

    gen = commands.add_parser('gen', help="generate a fixture graph")
    gen.add_argument('kind', choices=sorted(GENERATORS))
    gen.add_argument('params', type=int, nargs='+')
    gen.add_argument('-o', '--output')
    gen.set_defaults(handler=_cmd_gen)

    spectrum = commands.add_parser('spectrum', help="normalized Laplacian spectrum")
    spectrum.add_argument('-i', '--input', required=True)
    spectrum.add_argument('--tol', type=float, help="grouping tolerance (default: LAPMOTIF_TOL or 1e-8)")
    spectrum.add_argument('--json', action='store_true')
    spectrum.add_argument('--eigenvectors', action='store_true')
    spectrum.set_defaults(handler=_cmd_spectrum)

    m1 = commands.add_parser('m1', help="exact multiplicity of eigenvalue 1")
    m1.add_argument('-i', '--input', required=True)
    m1.add_argument('--basis', help="write the integer kernel basis, one vector per line")
    m1.add_argument('--json', action='store_true')
    m1.set_defaults(handler=_cmd_m1)

    verify = commands.add_parser('verify', help="exact eigenpair check")
    verify.add_argument('-i', '--input', required=True)
    verify.add_argument('-f', '--function', required=True)
    verify.add_argument('--lambda', dest='eigenvalue', type=parse_rational, required=True)
    verify.add_argument('--json', action='store_true')
    verify.set_defaults(handler=_cmd_verify)

    op = commands.add_parser('op', help="graph operations")
    ops = op.add_subparsers(dest='operation', required=True)
    op.set_defaults(handler=_cmd_op)

    p = ops.add_parser('double-vertex')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('--vertex', type=int, required=True)
    _add_output_flags(p)

    p = ops.add_parser('double-motif')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('--motif', required=True, help="comma-separated motif vertices")
    p.add_argument('--values', help="comma-separated motif function values (use --values=-1,0,1)")
    p.add_argument('--lambda', dest='eigenvalue', type=parse_rational)
    _add_output_flags(p)

    p = ops.add_parser('double-edge')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('--edge', type=int, nargs=2, required=True, metavar=('P1', 'P2'))
    _add_output_flags(p)

    p = ops.add_parser('double-graph')
    p.add_argument('-i', '--input', required=True)
    _add_output_flags(p)

    p = ops.add_parser('split')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-f', '--function', required=True)
    p.add_argument('--sigma0', default="")
    p.add_argument('--sigma1', default="")
    p.add_argument('--sigma2', default="")
    p.add_argument('--side', action='append', default=[], help="route an edge inside sigma0: u-v=1 or u-v=2")
    _add_output_flags(p)

    p = ops.add_parser('join')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('--at', type=int, required=True)
    p.add_argument('--other', required=True)
    p.add_argument('--other-at', type=int, required=True)
    p.add_argument('-f', '--function')
    p.add_argument('--other-function')
    p.add_argument('--lambda', dest='eigenvalue', type=parse_rational)
    _add_output_flags(p)

    p = ops.add_parser('attach-chain2')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-f', '--function', required=True)
    p.add_argument('--vertex', type=int, required=True)
    _add_output_flags(p)

    for name in ('merge', 'connect'):
        p = ops.add_parser(name)
        p.add_argument('-i', '--input', required=True)
        p.add_argument('-f', '--function', required=True)
        p.add_argument('--pairs', required=True, help="comma-separated p:q pairs")
        _add_output_flags(p)

    synth = commands.add_parser('synth', help="blocks and eigenfunction synthesis")
    blocks = synth.add_subparsers(dest='operation', required=True)
    synth.set_defaults(handler=_cmd_synth)

    p = blocks.add_parser('block')
    p.add_argument('--kind', choices=BLOCK_KINDS, required=True)
    p.add_argument('--count', type=int, default=1)
    _add_output_flags(p, function_flag=False)

    for name in ('rotate', 'negate'):
        p = blocks.add_parser(name)
        p.add_argument('-i', '--input', required=True)
        _add_output_flags(p, function_flag=False)

    p = blocks.add_parser('join')
    p.add_argument('-i', '--input', required=True, nargs='+')
    _add_output_flags(p, function_flag=False)

    p = blocks.add_parser('realize')
    p.add_argument('n', type=int)
    p.add_argument('m', type=int)
    _add_output_flags(p, function_flag=False)

    p = blocks.add_parser('embed')
    p.add_argument('-i', '--input', required=True)
    p.add_argument('-f', '--function', required=True)
    _add_output_flags(p)

    count = commands.add_parser('count', help="count copies of a pattern graph")
    count.add_argument('-i', '--input', required=True)
    count.add_argument('--pattern', required=True)
    count.add_argument('--json', action='store_true')
    count.set_defaults(handler=_cmd_count)

    view = commands.add_parser('view', help="live spectrum viewer")
    view.add_argument('-i', '--input')
    view.set_defaults(handler=_cmd_view)
    return parser


def _configure_logging(verbose: bool):
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
        stream=sys.stderr,
        force=True,
    )


def run(argv: Optional[Sequence[str]] = None) -> int:
    """Parse argv, dispatch, and return the exit code"""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return int(e.code or 0)
    _configure_logging(args.verbose)
    try:
        return args.handler(args)
    except LapMotifError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
