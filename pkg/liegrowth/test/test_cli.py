import json

import h5py
import pytest

from liegrowth.cli import (EXIT_CONFIG, EXIT_OK, EXIT_VERIFY, make_parser,
                           p_range, run)
from liegrowth.core import h5_read_str


def test_p_range():
    assert p_range('5:13') == [5, 7, 11, 13]
    assert p_range('14:16') == []


def test_every_experiment_has_a_subcommand():
    parser = make_parser()
    for name in ('construct', 'diameter', 'line-growth', 'towers', 'extremal',
                 'random-pairs', 'witt', 'chebotarev', 'covering',
                 'identity'):
        args = parser.parse_args([name])
        assert args.experiment == name


def test_diameter_csv(capsys):
    assert run(['diameter', '--type', 'A1', '--p', '5']) == EXIT_OK
    lines = capsys.readouterr().out.splitlines()
    assert lines[0] == 'p,k,size,ell,witness'
    assert lines[-1].split(',')[2] == '125'


def test_unknown_flag():
    assert run(['diameter', '--bogus', '1']) == EXIT_CONFIG
    assert run(['no-such-experiment']) == EXIT_CONFIG


def test_version(capsys):
    assert run(['--version']) == EXIT_OK


def test_dump_params(capsys):
    assert run(['random-pairs', '--p-range', '5:13', '--trials', '3',
                '--dump-params']) == EXIT_OK
    pars = json.loads(capsys.readouterr().out)
    assert pars['p'] == [5, 7, 11, 13]
    assert pars['trials'] == 3
    assert pars['type'] == 'A1'


def test_twist_prefixes_type(capsys):
    assert run(['diameter', '--type', 'A2', '--twist', '2', '--p', '7',
                '--dump-params']) == EXIT_OK
    assert json.loads(capsys.readouterr().out)['type'] == '2A2'
    assert run(['witt', '--twist', '2']) == EXIT_CONFIG


def test_params_file(tmp_path, capsys):
    fn = tmp_path / 'pars.json'
    fn.write_text(json.dumps({'type': 'A1', 'p': [5], 'trials': 2}))
    assert run(['random-pairs', '--params', str(fn), '--p', '7',
                '--dump-params']) == EXIT_OK
    pars = json.loads(capsys.readouterr().out)
    # explicit flags override the file
    assert pars['p'] == [7] and pars['trials'] == 2
    fn.write_text('[1, 2]')
    assert run(['random-pairs', '--params', str(fn)]) == EXIT_CONFIG
    fn.write_text(json.dumps({'bogus': 1}))
    assert run(['random-pairs', '--params', str(fn)]) == EXIT_CONFIG


def test_json_output_file(tmp_path, capsys):
    out = tmp_path / 'out.json'
    assert run(['random-pairs', '--p', '7', '--trials', '3', '--format',
                'json', '--out', str(out)]) == EXIT_OK
    summary = json.loads(capsys.readouterr().out)
    doc = json.loads(out.read_text())
    assert doc['summary'] == summary
    assert doc['config']['name'] == 'random-pairs'
    assert doc['config']['pars']['trials'] == 3


def test_h5_output(tmp_path):
    assert run(['diameter', '--p', '5', '--format', 'h5']) == EXIT_CONFIG
    fn = tmp_path / 'out.h5'
    assert run(['diameter', '--p', '5', '--format', 'h5', '--out',
                str(fn)]) == EXIT_OK
    with h5py.File(fn, 'r') as f:
        summary = json.loads(h5_read_str(f, 'liegrowth/diameter/summary'))
        assert summary['diameters']['5'] > 1
        assert f['liegrowth/diameter/records/size'][-1] == 125
        assert h5_read_str(f, 'liegrowth/__version__')


@pytest.mark.parametrize('argv', [
    ['diameter', '--type', 'X9'],
    ['witt', '--p', '3'],
    ['extremal', '--p', '5'],
    ['chebotarev', '--d', '3', '--q', '5'],
    ['diameter', '--type', 'A1', '--gens', 'e'],
])
def test_config_errors(argv, capsys):
    assert run(argv) == EXIT_CONFIG
    assert 'error' in capsys.readouterr().err


def test_identity_command(capsys):
    assert run(['identity', '--p', '7', '--samples', '100', '--format',
                'json']) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    assert doc['summary']['sl2_zero'] and doc['summary']['sl3_violated']


def test_outputs_are_reproducible(tmp_path, capsys):
    for fmt in ('csv', 'json'):
        files = [tmp_path / f'run{i}.{fmt}' for i in range(2)]
        for fn in files:
            assert run(['random-pairs', '--p', '7,11', '--trials', '4',
                        '--seed', '9', '--format', fmt, '--out',
                        str(fn)]) == EXIT_OK
        assert files[0].read_bytes() == files[1].read_bytes()


def test_extremal_certificate(capsys):
    assert run(['extremal', '--type', '2A2', '--p', '7', '--format',
                'json']) == EXIT_OK
    doc = json.loads(capsys.readouterr().out)
    cert = doc['document']['certificates']['7']
    assert cert['ok'] and cert['dim'] == 8


def test_verification_failure_exit_code(monkeypatch, capsys):
    from liegrowth import experiments
    from liegrowth.core import PipelineStall

    def stall(form, p):
        raise PipelineStall('eta closure stalled at span 5 of 8', span=5)

    monkeypatch.setattr(experiments, 'extremal_basis_pipeline', stall)
    assert run(['extremal', '--type', '2A2', '--p', '7']) == EXIT_VERIFY
    assert 'verification failed' in capsys.readouterr().err


def test_config_error_is_logged(caplog, capsys):
    assert run(['diameter', '--p', '5', '--format', 'h5']) == EXIT_CONFIG
    assert any(r.name == 'core' and r.getMessage() == '--format h5 needs --out'
               for r in caplog.records)
    assert '--format h5 needs --out' in capsys.readouterr().err
