import json
from contextlib import contextmanager
from pathlib import Path

from .utils import filesha256, write_jsonfile, formatfloat, UsageError, \
    ConfigError

__all__ = ['OutputDir', 'create_outputdir', 'formatcsvrow']


def formatcsvrow(values):
    """One CSV line; floats with 17 significant digits, None as empty."""
    fields = []
    for value in values:
        if value is None:
            fields.append('')
        elif isinstance(value, bool):
            fields.append(str(value).lower())
        elif isinstance(value, float):
            fields.append(formatfloat(value))
        else:
            fields.append(str(value))
    return ','.join(fields)


class OutputDir(object):
    """A directory for reports. Has methods for reading and writing json
    data, text and csv data, and for checksumming what it contains.

    Parameters
    ----------
    path: str or pathlib.Path

    """

    def __init__(self, path):
        path = Path(path)
        if not path.exists():
            raise OSError(f"'{path}' does not exist")
        self._path = path

    @property
    def path(self):
        return self._path

    @property
    def sha256(self):
        """Checksums (sha256) of files."""
        return self.sha256checksums()

    def __repr__(self):
        return f'OutputDir at "{self._path}"'

    __str__ = __repr__

    def read_jsonfile(self, filename):
        path = self._path.joinpath(filename)
        try:
            with open(path, 'r', encoding='utf-8') as fp:
                return json.load(fp)
        except json.JSONDecodeError as e:
            raise ConfigError(f"'{path}' is not valid json ({e})")

    def write_jsonfile(self, filename, data, sort_keys=True, indent=4,
                       overwrite=False):
        path = self._path.joinpath(filename)
        write_jsonfile(path, data=data, sort_keys=sort_keys, indent=indent,
                       overwrite=overwrite)

    def read_jsondict(self, filename, requiredkeys=None):
        d = self.read_jsonfile(filename=filename)
        if not isinstance(d, dict):
            raise ConfigError(f"json data in '{filename}' must be a "
                              f"dictionary")
        if requiredkeys is not None:
            keys = set(d.keys())
            requiredkeys = set(requiredkeys)
            if not requiredkeys.issubset(keys):
                difference = requiredkeys.difference(keys)
                raise ConfigError(f"required keys {sorted(difference)} not "
                                  f"present in '{filename}'")
        return d

    def write_jsondict(self, filename, d, overwrite=False):
        if not isinstance(d, dict):
            raise UsageError('json data must be a dictionary')
        return self.write_jsonfile(filename=filename, data=d,
                                   overwrite=overwrite)

    def write_txt(self, filename, text, overwrite=False):
        path = self._path.joinpath(filename)
        if not path.exists() or overwrite:
            with open(path, 'w', encoding='utf-8', newline='\n') as f:
                f.write(text)
                f.flush()
        else:
            raise OSError(f'File "{path}" exists, use `overwrite` parameter')

    def read_txt(self, filename):
        path = self._path.joinpath(filename)
        with open(path, 'r', encoding='utf-8') as fp:
            return fp.read()

    def write_csv(self, filename, header, rows, overwrite=False):
        """Writes a header line and one line per row of values."""
        lines = [','.join(header)]
        for row in rows:
            if len(row) != len(header):
                raise UsageError(f"row {row} does not match header {header}")
            lines.append(formatcsvrow(row))
        self.write_txt(filename, '\n'.join(lines) + '\n',
                       overwrite=overwrite)

    def sha256checksums(self, exclude=('checksums.json',)):
        """Checksums of all files, keyed by file name, in name order."""
        checksums = {}
        for filepath in sorted(self.path.iterdir()):
            if filepath.is_file() and filepath.name not in exclude:
                checksums[filepath.name] = filesha256(filepath)
        return checksums

    def write_checksums(self, filename='checksums.json'):
        self.write_jsondict(filename, self.sha256checksums(
            exclude=(filename,)), overwrite=True)

    def delete_files(self, filenames):
        for filename in filenames:
            path = self.path.joinpath(filename)
            if path.exists():
                path.unlink()

    @contextmanager
    def open_file(self, filename, accessmode='r', encoding='utf-8',
                  newline=None):
        """Open a file in the output directory and yield a file object.

        Examples
        --------
        >>> with d.open_file('notes.txt', 'a') as f:
        ...     n = f.write('grid run with s=1.5\\n')

        """
        filepath = self.path / filename
        with open(file=filepath, mode=accessmode, encoding=encoding,
                  newline=newline) as f:
            yield f


def create_outputdir(path, overwrite=True):
    """
    Parameters
    ----------
    path: str or pathlib.Path
        Created, including missing parents, if it does not exist.
    overwrite: True or False, optional
        Whether an existing directory may be reused. Default True.

    Returns
    -------
    OutputDir

    """
    path = Path(path)
    if path.exists() and not overwrite:
        raise OSError(f"'{path}' directory already exists; "
                      f"use `overwrite` parameter to overwrite")
    if path.exists() and not path.is_dir():
        raise UsageError(f"'{path}' exists and is not a directory")
    path.mkdir(parents=True, exist_ok=True)
    return OutputDir(path)
