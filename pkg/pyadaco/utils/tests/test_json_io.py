# Licensed under a 3-clause BSD style license - see LICENSE.rst

from ..json_io import *


def test_json_write_read(tmpdir):
    filename = str(tmpdir.join('content.json'))
    content = {'b': [1, 2.5, None], 'a': 'text'}
    json_write(filename, content)
    assert json_read(filename) == content


def test_json_write_stable(tmpdir):
    first = str(tmpdir.join('first.json'))
    second = str(tmpdir.join('second.json'))
    json_write(first, {'b': 1, 'a': 0.1})
    json_write(second, {'a': 0.1, 'b': 1})
    with open(first, 'rb') as f1, open(second, 'rb') as f2:
        assert f1.read() == f2.read()


def test_json_lines(tmpdir):
    filename = str(tmpdir.join('reports.jsonl'))
    json_append_line(filename, {'sample_id': '000000', 't_c': 13})
    json_append_line(filename, {'sample_id': '000001', 't_c': 9})
    records = json_read_lines(filename)
    assert len(records) == 2
    assert records[1]['t_c'] == 9
    with open(filename) as file:
        assert len(file.read().splitlines()) == 2
