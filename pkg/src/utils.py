import hashlib
import json
import typing

_DOUBLE_SLASH = "//"


def _strip_line_comment(line: str) -> str:
    """Cut a line at the first // that is not inside a string literal."""
    in_string = False
    escaped = False
    for i, char in enumerate(line):
        if escaped:
            escaped = False
        elif char == "\\":
            escaped = in_string
        elif char == '"':
            in_string = not in_string
        elif not in_string and line.startswith(_DOUBLE_SLASH, i):
            return line[:i]
    return line


class JSONWithCommentsDecoder(json.JSONDecoder):
    """JSON Decoder which allows comments starting with //.

    Comments are not preserved. They are simply useful to document
    configuration files. A // inside a string value (a URL, say) is kept.
    """

    def decode(self, s: str) -> typing.Any:
        lines = (_strip_line_comment(line) for line in s.split("\n"))
        return super().decode("\n".join(lines))


def json_loads(s: str, **kwargs) -> typing.Any:
    """Helper function to decode a JSON string.

    JSON inputs can contain comments beginning with //.

    Wrapper function for `json.loads`, with custom decoder.
    """
    return json.loads(s, cls=JSONWithCommentsDecoder, **kwargs)


def canonical_json(obj: typing.Any) -> str:
    """Serialise obj so that equal content always gives equal text.

    >>> canonical_json({"b": 1, "a": [1.5, None]})
    '{"a":[1.5,null],"b":1}'
    """
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), allow_nan=False)


def content_hash(obj: typing.Any) -> str:
    """SHA-256 hex digest of the canonical JSON form of obj."""
    return hashlib.sha256(canonical_json(obj).encode("utf-8")).hexdigest()
