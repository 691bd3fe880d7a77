from flask import Blueprint, Response, current_app, jsonify, request

from utils.errors import BudgetExceededError, InvalidHypergraphError
from utils.hypergraph import parse_hypergraph
from utils.odd_bipartite import find_odd_bipartition
from utils.report import TARGETS, SpectralAnalyzer, render_json

spectra_bp = Blueprint('spectra', __name__)


def _settings():
    settings = current_app.config['HYPERTEN_SETTINGS']
    return settings.override(
        tol=request.args.get('tol', type=float),
        max_iterations=request.args.get('max_iters', type=int),
    )


def _read_hypergraph():
    allow_singletons = request.args.get('allow_singleton_edges', 'false').lower() in ('1', 'true', 'yes')
    hypergraph = parse_hypergraph(request.get_data(as_text=True), allow_singleton_edges=allow_singletons)
    if hypergraph.n == 0:
        raise InvalidHypergraphError("edge list declares no vertices")
    return hypergraph


@spectra_bp.route('/health')
def health():
    return jsonify({'status': 'ok'})


@spectra_bp.route('/report', methods=['POST'])
def report():
    """Full spectral report for the edge-list text in the request body"""
    target = request.args.get('target', 'both').lower()
    if target not in TARGETS:
        return jsonify({'error': f"target must be one of {sorted(TARGETS)}"}), 400
    settings = _settings()
    if settings.tol <= 0 or settings.max_iterations < 1:
        return jsonify({'error': "tol must be positive and max_iters at least 1"}), 400
    try:
        hypergraph = _read_hypergraph()
        result = SpectralAnalyzer(settings).build_report(hypergraph, target)
    except InvalidHypergraphError as e:
        current_app.logger.error(f"Rejected hypergraph: {str(e)}")
        return jsonify({'error': str(e), 'line': getattr(e, 'line_number', None)}), 400
    except BudgetExceededError as e:
        current_app.logger.error(f"Dense budget exceeded: {str(e)}")
        return jsonify({'error': str(e)}), 413

    return Response(render_json(result.to_dict()), mimetype='application/json')


@spectra_bp.route('/oddbip', methods=['POST'])
def oddbip():
    """Odd-bipartite verdict only, no spectral solve"""
    try:
        hypergraph = _read_hypergraph()
    except InvalidHypergraphError as e:
        current_app.logger.error(f"Rejected hypergraph: {str(e)}")
        return jsonify({'error': str(e), 'line': getattr(e, 'line_number', None)}), 400

    return jsonify(find_odd_bipartition(hypergraph).to_dict())
