"""Wire protocol: length-delimited JSON messages over a duplex channel.

Message kinds are {hello, loadData, interact, brush, queryAt, layerDiff,
error}.  ``handle_message`` is transport-agnostic: the TCP and WebSocket
servers (and the in-process tests) all feed parsed dicts through it, so
every client path drives the session through the same operations.

Replies go to the sender only; broadcasts go to every connected client
of the session, in the same order for all of them.
"""

from __future__ import annotations

import json

from .session import Command, ScriptError, Session

__all__ = ["decode_frame_stream", "encode_frame", "handle_message", "layer_diff"]

PROTOCOL_VERSION = 1

_INTERACT_BUILDERS = {
    "wrapX": lambda m: Command("wrapX", (int(m.get("count", 1)),)),
    "wrapXMult": lambda m: Command("wrapXMult", (tuple(int(v) for v in m["sizes"]),)),
    "wrapPeriod": lambda m: Command("wrapPeriod", (int(m["period"]),)),
    "wrapIrregular": lambda m: Command("wrapIrregular", (float(m["speed"]),)),
    "wrapY": lambda m: Command("wrapY", (float(m["band"]),)),
    "facetInd": lambda m: Command("facetInd", (int(m.get("steps", 1)),)),
    "facetVar": lambda m: Command("facetVar", ()),
    "facetPeriod": lambda m: Command("facetPeriod", ()),
    "mirror": lambda m: Command("mirror", (str(m.get("divider", "mean")),)),
    "shiftX": lambda m: Command("shiftX", (int(m["group"]), float(m["from"]), float(m["to"]))),
    "switch": lambda m: Command("switch", ()),
    "standardize": lambda m: Command("standardize", ()),
}


def _attrs_payload(session: Session) -> dict:
    payload = {"long": {"brushed": [bool(b) for b in session.table.brushed]}}
    if session.wide is not None:
        payload["wide"] = {"brushed": [bool(b) for b in session.wide.brushed]}
    return payload


def layer_diff(session: Session, reason: str, include_coords: bool) -> dict:
    """Build a layerDiff message; brush-only diffs omit the coordinates."""
    layers = session.layers()
    diff = {
        "kind": "layerDiff",
        "version": session.version,
        "reason": reason,
        "mode": session.mode,
        "aspect": session.aspect,
        "axes": {"xlim": list(layers.axes.xlim), "ylim": list(layers.axes.ylim)},
        "grid": {"xTicks": list(layers.grid.x_ticks), "yTicks": list(layers.grid.y_ticks)},
        "coords": None,
        "segments": None,
        "polygons": None,
        "attrs": _attrs_payload(session),
        "brush": {
            "points": list(layers.brush.points),
            "segments": list(layers.brush.segments),
            "polygons": list(layers.brush.polygons),
        },
    }
    if include_coords:
        diff["coords"] = {
            "x": [float(v) for v in session.state.x],
            "y": [float(v) for v in session.state.y],
        }
        diff["segments"] = [
            {
                "ax": seg.ax, "ay": seg.ay, "bx": seg.bx, "by": seg.by,
                "a": seg.a, "b": seg.b, "source": seg.source_point,
                "group": seg.group, "color": seg.color,
            }
            for seg in layers.segments
        ]
        diff["polygons"] = [
            {
                "xs": list(poly.xs), "ys": list(poly.ys), "color": poly.color,
                "source": poly.source_point, "segment": poly.segment,
            }
            for poly in layers.polygons
        ]
    return diff


def _hello_payload(session: Session) -> dict:
    table = session.table
    payload = {
        "kind": "hello",
        "protocol": PROTOCOL_VERSION,
        "session": session.name,
        "version": session.version,
        "n": len(table),
        "variables": table.variables,
        "individuals": table.individuals,
        "labels": table.labels,
        "colors": list(table.color),
        "varIdx": [int(v) for v in table.var_idx],
        "indIdx": [int(v) for v in table.ind_idx],
        "series": [int(v) for v in table.series_idx],
        "timeIndex": [float(v) for v in table.time_index],
        "wide": None,
    }
    if session.wide is not None:
        payload["wide"] = {
            "times": [float(t) for t in session.wide.times],
            "labels": session.wide.labels,
            "columns": {k: [float(v) for v in col] for k, col in session.wide.columns.items()},
        }
    return payload


def handle_message(session: Session, message: dict) -> tuple[list[dict], list[dict]]:
    """Process one message; returns (replies to sender, broadcasts to all).

    Malformed messages produce an error frame and leave the session
    untouched.
    """
    if not isinstance(message, dict) or "kind" not in message:
        return [{"kind": "error", "message": "message must be an object with a 'kind'"}], []
    kind = message["kind"]
    try:
        if kind == "hello":
            replies = [_hello_payload(session), layer_diff(session, "hello", include_coords=True)]
            return replies, []
        if kind == "loadData":
            fmt = message.get("format", "long")
            csv_text = message["csv"]
            fresh = (
                Session.from_wide_csv(csv_text, name=session.name)
                if fmt == "wide"
                else Session.from_long_csv(csv_text, name=session.name)
            )
            session.replace_from(fresh)
            return [_hello_payload(session)], [layer_diff(session, "load", include_coords=True)]
        if kind == "interact":
            op = message.get("op")
            builder = _INTERACT_BUILDERS.get(op)
            if builder is None:
                return [{"kind": "error", "message": f"unknown interact op {op!r}"}], []
            command = builder(message)
            session.apply(command)
            return [], [layer_diff(session, "interact", include_coords=True)]
        if kind == "brush":
            session.brush(
                [int(i) for i in message.get("ids", [])],
                mode=message.get("mode", "singlePoint"),
                table=message.get("table", "long"),
            )
            return [], [layer_diff(session, "brush", include_coords=False)]
        if kind == "queryAt":
            result = session.query_at(
                float(message["x"]), float(message["y"]),
                radius=float(message.get("radius", 0.03)),
            )
            return [{"kind": "queryAt", "result": result}], []
        return [{"kind": "error", "message": f"unknown message kind {kind!r}"}], []
    except (KeyError, TypeError, ValueError, ScriptError) as exc:
        return [{"kind": "error", "message": f"{kind}: {exc}"}], []


def encode_frame(message: dict) -> bytes:
    """Length-delimited frame: 4-byte big-endian length + UTF-8 JSON."""
    body = json.dumps(message, separators=(",", ":"), sort_keys=True).encode()
    return len(body).to_bytes(4, "big") + body


def decode_frame_stream(buffer: bytearray) -> list[dict]:
    """Consume complete frames from ``buffer`` (mutated in place)."""
    messages = []
    while len(buffer) >= 4:
        length = int.from_bytes(buffer[:4], "big")
        if len(buffer) < 4 + length:
            break
        body = bytes(buffer[4:4 + length])
        del buffer[:4 + length]
        messages.append(json.loads(body.decode()))
    return messages
