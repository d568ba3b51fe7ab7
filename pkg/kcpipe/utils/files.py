import hashlib
import json
import os
from pathlib import Path


def file_sha256(path):
    digest = hashlib.sha256()
    with open(path, 'rb') as fh:
        for chunk in iter(lambda: fh.read(65536), b''):
            digest.update(chunk)
    return digest.hexdigest()


def write_text(path, text):
    """Write UTF-8 text with LF line endings, replacing the file atomically."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    tmp = path.with_name(path.name + '.tmp')
    with open(tmp, 'w', encoding='utf-8', newline='\n') as fh:
        fh.write(text)
    os.replace(tmp, path)


def dump_json(data):
    return json.dumps(data, indent=2, ensure_ascii=False) + '\n'


def write_json(path, data):
    write_text(path, dump_json(data))


def read_json(path):
    with open(path, encoding='utf-8') as fh:
        return json.load(fh)
