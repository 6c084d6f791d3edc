import json
import math

import pytest

from tccmap.cli.tccmap_run import EXIT_FAILED, EXIT_OK, EXIT_USAGE, exc_handler_to_dict, run
from tccmap.colex import build_dual, hexagon_patch, serialize
from tccmap.exceptions import ColoringException, JSONError

HEXAGON_OVERLAP = math.cosh(0.5) ** 6 + math.sinh(0.5) ** 6


def _run(capsys, *argv):
    code = run([str(a) for a in argv])
    out = capsys.readouterr().out
    return code, json.loads(out)


@pytest.fixture
def hexagon_file(tmp_path, hexagon):
    return serialize.dump(hexagon, tmp_path / "hexagon.json", with_digest=True)


@pytest.fixture
def torus_file(tmp_path, minimal_torus):
    return serialize.dump(minimal_torus, tmp_path / "torus.json")


def _write_json(path, data):
    path.write_text(json.dumps(data))
    return path


def test_colex_gen(capsys):
    code, envelope = _run(capsys, 'colex', 'gen', '--family', 'hex', '--rows', 1, '--cols', 3)
    assert code == EXIT_OK
    lattice = serialize.from_dict(envelope['payload']['lattice'])
    assert lattice.n_vertices == 6
    assert envelope['errors'] == []
    assert envelope['config']['command'] == 'colex gen'


def test_colex_gen_writes_file(capsys, tmp_path):
    out = tmp_path / "patch.json"
    code, envelope = _run(capsys, 'colex', 'gen', '--family', 'hexagon', '--dual', '--out', out)
    assert code == EXIT_OK
    assert serialize.load(out) == hexagon_patch()
    assert envelope['payload']['written'] == str(out)


def test_colex_gen_inadmissible(capsys):
    code, envelope = _run(capsys, 'colex', 'gen', '--family', 'hex', '--cols', 4)
    assert code == EXIT_USAGE
    assert envelope['errors'][0]['type'] == 'ColoringException'


def test_colex_dual_and_border(capsys, tmp_path, hexagon_file):
    dual_path = tmp_path / "dual.json"
    code, _ = _run(capsys, 'colex', 'dual', '--in', hexagon_file, '--out', dual_path)
    assert code == EXIT_OK
    assert serialize.load(dual_path) == build_dual(serialize.load(hexagon_file))
    code, envelope = _run(capsys, 'colex', 'border', '--in', dual_path)
    assert code == EXIT_OK
    assert serialize.from_dict(envelope['payload']['lattice']) == serialize.load(hexagon_file)


def test_validate(capsys, hexagon_file, tmp_path):
    code, envelope = _run(capsys, 'colex', 'validate', '--in', hexagon_file)
    assert code == EXIT_OK
    assert envelope['payload']['passed'] is True
    assert envelope['config']['inputs'][hexagon_file.as_posix()]

    body = serialize.to_dict(serialize.load(hexagon_file))
    body['edges'] = body['edges'][1:]
    broken = _write_json(tmp_path / "broken.json", body)
    code, envelope = _run(capsys, 'colex', 'validate', '--in', broken)
    assert code == EXIT_FAILED
    assert envelope['payload']['checks']['face_boundaries'] is False


def test_code_info(capsys, hexagon_file, torus_file):
    code, envelope = _run(capsys, 'code', 'info', '--in', hexagon_file)
    assert code == EXIT_OK
    assert envelope['payload']['k'] == 0
    assert envelope['payload']['n'] == 6
    _, envelope = _run(capsys, 'code', 'info', '--in', torus_file)
    assert envelope['payload']['k'] == 4
    assert envelope['payload']['h1'] == 2


def test_code_state(capsys, hexagon_file, tmp_path):
    out = tmp_path / "state.bin"
    code, envelope = _run(capsys, 'code', 'state', '--in', hexagon_file, '--out', out)
    assert code == EXIT_OK
    assert envelope['payload']['support'] == 2
    assert envelope['payload']['norm2'] == "2"
    assert len(out.read_bytes()) == 64 * 16


def test_code_overlap(capsys, hexagon_file, tmp_path):
    coeffs = _write_json(tmp_path / "coeffs.json", {'betaJ': 0.5})
    code, envelope = _run(capsys, 'code', 'overlap', '--in', hexagon_file, '--coeffs', coeffs)
    assert code == EXIT_OK
    dense = float(envelope['payload']['overlap']['re'])
    assert dense == pytest.approx(HEXAGON_OVERLAP, rel=1e-12)
    assert float(envelope['payload']['string_net_overlap']['re']) == pytest.approx(dense)


def test_spin_z(capsys, hexagon_file, tmp_path):
    couplings = _write_json(tmp_path / "couplings.json", {'beta': 1, 'J': {'uniform': 0.5}})
    code, envelope = _run(
        capsys, 'spin', 'z', '--lattice', hexagon_file, '--couplings', couplings, '--method', 'both'
    )
    assert code == EXIT_OK
    payload = envelope['payload']
    assert payload['n_sites'] == 7
    assert float(payload['exact']['re']) == pytest.approx(128 * HEXAGON_OVERLAP, rel=1e-12)
    assert float(payload['relative_error']) < 1e-12


def test_spin_z_malformed_couplings(capsys, hexagon_file, tmp_path):
    couplings = _write_json(tmp_path / "couplings.json", {'beta': 1})
    code, envelope = _run(capsys, 'spin', 'z', '--lattice', hexagon_file, '--couplings', couplings)
    assert code == EXIT_USAGE
    error = envelope['errors'][0]
    assert error['type'] == 'JSONError'
    assert error['location'] == {'file': str(couplings)}


def test_spin_ground(capsys, hexagon_file):
    code, envelope = _run(capsys, 'spin', 'ground', '--lattice', hexagon_file, '--sign', '-')
    assert code == EXIT_OK
    assert envelope['payload']['count'] == 4
    assert all(len(s) == 7 for s in envelope['payload']['states'])


def test_spin_critical(capsys, tmp_path):
    out = tmp_path / "critical.csv"
    code, envelope = _run(
        capsys, 'spin', 'critical', '--widths', '6', '--grid', '0.3,0.6,7', '--out', out
    )
    assert code == EXIT_OK
    assert envelope['config']['format'] == 'csv'
    assert len(envelope['payload']['peaks']) == 1
    assert float(envelope['payload']['reference']['K_c']) == 0.4407
    lines = out.read_text().splitlines()
    assert lines[0] == "width,betaJ,free_energy,specific_heat"
    assert len(lines) == 8


def test_verify_overlap(capsys, hexagon_file):
    code, envelope = _run(capsys, 'verify', 'overlap', '--lattice', hexagon_file)
    assert code == EXIT_OK
    results = envelope['payload']['results']
    assert len(results) == 7
    assert all(r['passed'] for r in results)


def test_verify_overlap_torus(capsys, torus_file):
    code, envelope = _run(capsys, 'verify', 'overlap', '--lattice', torus_file, '--betaJ', '0.5')
    assert code == EXIT_FAILED
    assert envelope['errors'][0]['type'] == 'HomologyObstruction'


def test_verify_field(capsys, hexagon_file, tmp_path):
    fields = _write_json(tmp_path / "fields.json", {
        'beta': 0.8,
        'J': [0.1, -0.2, 0.3, -0.4, 0.5, -0.6],
        'h': [0.05, 0.1, -0.15, 0.2, -0.25, 0.3, 0.35],
    })
    code, envelope = _run(capsys, 'verify', 'field', '--lattice', hexagon_file, '--fields', fields)
    assert code == EXIT_OK
    assert envelope['payload']['passed'] is True


def test_mqc_sample_thread_invariant(capsys, hexagon_file):
    argv = ['mqc', 'sample', '--lattice', hexagon_file, '--basis', 'x', '--n-samples', 40,
            '--seed', 12]
    _, single = _run(capsys, '--threads', 1, *argv)
    _, many = _run(capsys, '--threads', 3, *argv)
    assert single['payload'] == many['payload']
    assert single['config']['seed'] == 12
    for sample in single['payload']['samples']:
        assert sample['outcome_bits'].count('1') % 2 == 0


def test_mqc_sample_csv(capsys, hexagon_file, tmp_path):
    out = tmp_path / "samples.csv"
    code, envelope = _run(
        capsys, 'mqc', 'sample', '--lattice', hexagon_file, '--n-samples', 5, '--order', '0,1',
        '--out', out
    )
    assert code == EXIT_OK
    lines = out.read_text().splitlines()
    assert lines[0] == "sample_index,outcome_bits,probability"
    assert len(lines) == 6
    assert all(line.split(',')[1][2:] == '----' for line in lines[1:])


def test_mqc_basis_file(capsys, hexagon_file, tmp_path):
    basis = _write_json(tmp_path / "basis.json", {'bases': [
        {'b0': [1, 0, 0, 0], 'b1': [0, 0, 1, 0]} for _ in range(6)
    ]})
    code, envelope = _run(capsys, 'mqc', 'joint', '--lattice', hexagon_file, '--basis', basis)
    assert code == EXIT_OK
    assert envelope['payload']['probabilities'] == {'000000': "0.5", '111111': "0.5"}


def test_mqc_bad_basis(capsys, hexagon_file, tmp_path):
    basis = _write_json(tmp_path / "basis.json", {'bases': [
        {'b0': [1, 0, 0, 0], 'b1': [1, 0, 0, 0]} for _ in range(6)
    ]})
    code, envelope = _run(capsys, 'mqc', 'joint', '--lattice', hexagon_file, '--basis', basis)
    assert code == EXIT_USAGE
    assert envelope['errors'][0]['type'] == 'NonOrthonormalBasis'


def test_mqc_joint_x(capsys, hexagon_file):
    code, envelope = _run(capsys, 'mqc', 'joint', '--lattice', hexagon_file, '--basis', 'x')
    assert code == EXIT_OK
    assert len(envelope['payload']['probabilities']) == 32
    assert float(envelope['payload']['total']) == pytest.approx(1.0)


def test_mqc_partial_fallback(capsys, hexagon_file):
    code, envelope = _run(
        capsys, 'mqc', 'partial', '--lattice', hexagon_file,
        '--measured', '0,1', '--outcomes', '0,0',
    )
    assert code == EXIT_OK
    assert envelope['payload']['fallback'] is True
    assert envelope['payload']['dictionary'] is None


def test_cluster_commands(capsys, hexagon_file):
    code, envelope = _run(capsys, 'cluster', 'state', '--lattice', hexagon_file)
    assert code == EXIT_OK
    assert envelope['payload']['matches_closed_form'] is True
    assert envelope['payload']['support'] == 64
    code, envelope = _run(capsys, 'cluster', 'project', '--lattice', hexagon_file, '--x', '0000000')
    assert code == EXIT_OK
    assert envelope['payload']['equals_code_state'] is True
    code, envelope = _run(capsys, 'cluster', 'project', '--lattice', hexagon_file, '--x', '1000000')
    assert code == EXIT_USAGE
    assert envelope['errors'][0]['type'] == 'ImpossibleOutcome'


def test_goldens_command(capsys, tmp_path):
    code, envelope = _run(capsys, 'goldens', '--out', tmp_path)
    assert code == EXIT_OK
    assert len(envelope['payload']['written']) == 8


def test_output_file(capsys, hexagon_file, tmp_path):
    out = tmp_path / "envelope.json"
    code = run(['-o', str(out), 'code', 'info', '--in', str(hexagon_file)])
    assert code == EXIT_OK
    assert capsys.readouterr().out.startswith("Results saved to")
    assert json.loads(out.read_text())['payload']['k'] == 0


def test_usage_errors(capsys, tmp_path):
    assert run(['nonsense']) == EXIT_USAGE
    assert "tccmap: error:" in capsys.readouterr().err
    code, envelope = _run(capsys, 'code', 'info', '--in', tmp_path / "missing.json")
    assert code == EXIT_USAGE
    assert envelope['errors'][0]['type'] == 'UsageError'
    code, envelope = _run(capsys, '--threads', 0, 'goldens', '--out', tmp_path)
    assert code == EXIT_USAGE


def test_traceback_flag():
    with pytest.raises(ColoringException):
        run(['--traceback', 'colex', 'gen', '--family', 'four8', '--rows', '1', '--cols', '2'])


def test_exc_handler_to_dict():
    data = exc_handler_to_dict(ColoringException("no coloring", ("face", 2)), 'colex gen')
    assert data['type'] == 'ColoringException'
    assert data['message'] == "no coloring"
    assert data['formattedMessage'] == "face 2: no coloring"
    assert data['location'] == {'kind': 'face', 'index': 2}
    data = exc_handler_to_dict(JSONError("bad", "a.json"), 'spin z')
    assert data['location'] == {'file': "a.json"}
