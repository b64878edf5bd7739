# Licensed under a 3-clause BSD style license - see LICENSE.rst

from json import dumps, loads

__all__ = ['json_write', 'json_append_line', 'json_read', 'json_read_lines']


def json_write(filename, content):
    """
    Writes ``content`` as JSON, replacing the file.

    Parameters
    ----------
    filename : `str` or path-like
        The file to write.

    content : `dict`-like or `list`-like
        Must be serializable by the json module.

    Notes
    -----
    Keys are sorted so that the same content always gives the same bytes.
    """
    with open(filename, 'w') as file:
        file.write(dumps(content, sort_keys=True, indent=2))
        file.write('\n')


def json_append_line(filename, content):
    """
    Appends ``content`` as a single JSON line (JSON lines format).

    Parameters
    ----------
    filename : `str` or path-like
        The file to append to. Created if missing.

    content : `dict`-like
        Must be serializable by the json module.
    """
    with open(filename, 'a') as file:
        file.write(dumps(content, sort_keys=True))
        file.write('\n')


def json_read(filename):
    """
    Reads a JSON file.

    Parameters
    ----------
    filename : `str` or path-like
        The file to read.

    Returns
    -------
    content : `dict`, `list`, ...
        The decoded content.
    """
    with open(filename, 'r') as file:
        return loads(file.read())


def json_read_lines(filename):
    """
    Reads a JSON lines file.

    Returns
    -------
    records : `list`
        One decoded object per non-empty line.
    """
    with open(filename, 'r') as file:
        return [loads(line) for line in file if line.strip()]
