"""Wire protocol: message handling, framing, and the live server."""

from __future__ import annotations

import asyncio
import json

import numpy as np
import pytest

from foldplot.protocol import decode_frame_stream, encode_frame, handle_message
from foldplot.server import SessionServer
from foldplot.session import Session

from conftest import series_records

WIDE_CSV = "Time,V1,V2,V3\n1,3.1,27,11.9\n2,3.4,23,12.5\n3,3.3,25,12.1\n4,3.0,26,12.2\n"


def _session():
    return Session.from_wide_csv(WIDE_CSV)


def test_hello_carries_dataset_and_initial_layers():
    session = _session()
    replies, broadcasts = handle_message(session, {"kind": "hello"})
    assert [r["kind"] for r in replies] == ["hello", "layerDiff"]
    assert replies[0]["n"] == 12
    assert replies[0]["variables"] == ["V1", "V2", "V3"]
    assert replies[0]["wide"]["times"] == [1, 2, 3, 4]
    assert broadcasts == []


def test_wrap_message_produces_diff_with_new_coords_and_limits():
    session = _session()
    replies, broadcasts = handle_message(session, {"kind": "interact", "op": "wrapX"})
    assert replies == []
    diff = broadcasts[0]
    assert diff["kind"] == "layerDiff" and diff["reason"] == "interact"
    assert diff["axes"]["xlim"] == [1.0, 3.0]
    assert diff["coords"]["x"][:4] == [1.0, 2.0, 3.0, 1.0]


def test_brush_message_matches_self_link_and_omits_coords():
    session = _session()
    _, broadcasts = handle_message(
        session, {"kind": "brush", "ids": [1], "mode": "wholeSeries"}
    )
    diff = broadcasts[0]
    assert diff["coords"] is None
    brushed = diff["attrs"]["long"]["brushed"]
    assert [i for i, b in enumerate(brushed) if b] == [0, 1, 2, 3]  # all of V1
    assert diff["attrs"]["wide"]["brushed"] == [True, True, True, True]


def test_malformed_messages_leave_session_unchanged():
    session = _session()
    v = session.version
    for bad in (
        "not a dict",
        {"no": "kind"},
        {"kind": "interact", "op": "explode"},
        {"kind": "interact", "op": "wrapPeriod"},  # missing params
        {"kind": "queryAt"},
        {"kind": "brush", "ids": [0], "mode": "bogus"},
    ):
        replies, broadcasts = handle_message(session, bad)
        assert replies[0]["kind"] == "error"
        assert broadcasts == []
    assert session.version == v
    np.testing.assert_array_equal(session.state.x, session.state.x0)


def test_query_message_round_trip():
    session = _session()
    replies, _ = handle_message(
        session, {"kind": "queryAt", "x": 2.0, "y": 3.4, "radius": 0.05}
    )
    assert replies[0]["kind"] == "queryAt"
    assert replies[0]["result"]["time"] == "2"
    far, _ = handle_message(session, {"kind": "queryAt", "x": 99.0, "y": 99.0})
    assert far[0]["result"] is None


def test_load_data_message_swaps_dataset():
    session = Session.from_records(series_records(range(5)))
    replies, broadcasts = handle_message(
        session, {"kind": "loadData", "csv": WIDE_CSV, "format": "wide"}
    )
    assert replies[0]["kind"] == "hello"
    assert replies[0]["n"] == 12
    assert broadcasts[0]["reason"] == "load"


def test_script_and_wire_paths_produce_identical_states(lynx_like):
    scripted = Session.from_records(list(lynx_like.records))
    scripted.run_script("wrapX 75; facetVar; brush series 0")

    wired = Session.from_records(list(lynx_like.records))
    for _ in range(75):
        handle_message(wired, {"kind": "interact", "op": "wrapX"})
    handle_message(wired, {"kind": "interact", "op": "facetVar"})
    handle_message(wired, {"kind": "brush", "ids": [0], "mode": "wholeSeries"})

    assert scripted.export_coords() == wired.export_coords()


def test_frame_codec_round_trip_and_partial_reads():
    frames = [{"kind": "hello"}, {"kind": "interact", "op": "wrapX", "count": 3}]
    blob = b"".join(encode_frame(f) for f in frames)
    buffer = bytearray()
    decoded = []
    for i in range(0, len(blob), 7):  # drip-feed in odd chunks
        buffer.extend(blob[i:i + 7])
        decoded.extend(decode_frame_stream(buffer))
    assert decoded == frames
    assert buffer == bytearray()


async def _tcp_request(reader, writer, message):
    writer.write(encode_frame(message))
    await writer.drain()


async def _read_frames(reader, buffer, count, timeout=5.0):
    frames = []
    while len(frames) < count:
        chunk = await asyncio.wait_for(reader.read(65536), timeout)
        assert chunk, "server closed unexpectedly"
        buffer.extend(chunk)
        frames.extend(decode_frame_stream(buffer))
    return frames


def test_two_clients_receive_identical_diffs_in_order(lynx_like):
    async def scenario():
        server = SessionServer(Session.from_records(list(lynx_like.records)))
        ws_port, tcp_port = await server.start(port=0, wire_port=0)
        r1, w1 = await asyncio.open_connection("127.0.0.1", tcp_port)
        r2, w2 = await asyncio.open_connection("127.0.0.1", tcp_port)
        buf1, buf2 = bytearray(), bytearray()
        try:
            for count in (30, 45):
                await _tcp_request(r1, w1, {"kind": "interact", "op": "wrapX", "count": count})
            await _tcp_request(r2, w2, {"kind": "interact", "op": "facetVar"})
            got1 = await _read_frames(r1, buf1, 3)
            got2 = await _read_frames(r2, buf2, 3)
            assert got1 == got2
            assert [g["reason"] for g in got1] == ["interact"] * 3
            versions = [g["version"] for g in got1]
            assert versions == sorted(versions)
        finally:
            w1.close()
            w2.close()
            await server.stop()
        return True

    assert asyncio.run(scenario())


def test_tcp_malformed_frame_gets_error_and_close(lynx_like):
    async def scenario():
        server = SessionServer(Session.from_records(list(lynx_like.records)))
        _, tcp_port = await server.start(port=0, wire_port=0)
        reader, writer = await asyncio.open_connection("127.0.0.1", tcp_port)
        bad = b"this is not json"
        writer.write(len(bad).to_bytes(4, "big") + bad)
        await writer.drain()
        buffer = bytearray()
        frames = await _read_frames(reader, buffer, 1)
        assert frames[0]["kind"] == "error"
        writer.close()
        await server.stop()
        return True

    assert asyncio.run(scenario())


def test_websocket_client_speaks_same_protocol(lynx_like):
    websockets = pytest.importorskip("websockets")

    async def scenario():
        from websockets.asyncio.client import connect

        server = SessionServer(Session.from_records(list(lynx_like.records)))
        ws_port, _ = await server.start(port=0, wire_port=0)
        async with connect(f"ws://127.0.0.1:{ws_port}/ws") as ws:
            await ws.send(json.dumps({"kind": "hello"}))
            hello = json.loads(await asyncio.wait_for(ws.recv(), 5))
            assert hello["kind"] == "hello" and hello["n"] == 114
            first_diff = json.loads(await asyncio.wait_for(ws.recv(), 5))
            assert first_diff["kind"] == "layerDiff"
            await ws.send(json.dumps({"kind": "interact", "op": "wrapX", "count": 75}))
            diff = json.loads(await asyncio.wait_for(ws.recv(), 5))
            assert diff["axes"]["xlim"] == [1.0, 39.0]
        await server.stop()
        return True

    assert asyncio.run(scenario())
