"""Serving a session over TCP frames and WebSocket, plus the UI bundle.

One session has one logical writer: every incoming message is handled
under the session lock, in arrival order, and the resulting broadcasts
are fanned out to all connected clients in identical order.  The TCP
transport uses 4-byte length-prefixed JSON frames; the WebSocket carries
one JSON message per text frame.  Both speak the same protocol.
"""

from __future__ import annotations

import asyncio
import json
import mimetypes
from pathlib import Path

from websockets.asyncio.server import serve as ws_serve
from websockets.datastructures import Headers
from websockets.http11 import Response

from .protocol import decode_frame_stream, encode_frame, handle_message
from .session import Session

__all__ = ["SessionServer"]


class SessionServer:
    """Hosts one session on a WebSocket/HTTP port and a raw TCP port."""

    def __init__(self, session: Session, assets_dir: str | Path | None = None):
        self.session = session
        self.assets_dir = Path(assets_dir) if assets_dir else None
        self.lock = asyncio.Lock()
        self._clients: list[asyncio.Queue] = []
        self._servers = []

    # -- shared handling ------------------------------------------------

    async def process(self, message: dict) -> list[dict]:
        """Handle one message under the session lock; returns sender replies."""
        async with self.lock:
            replies, broadcasts = handle_message(self.session, message)
            for frame in broadcasts:
                for queue in list(self._clients):
                    queue.put_nowait(frame)
        return replies

    def _attach(self) -> asyncio.Queue:
        queue: asyncio.Queue = asyncio.Queue()
        self._clients.append(queue)
        return queue

    def _detach(self, queue: asyncio.Queue) -> None:
        if queue in self._clients:
            self._clients.remove(queue)

    # -- TCP transport ----------------------------------------------------

    async def _tcp_client(self, reader: asyncio.StreamReader, writer: asyncio.StreamWriter):
        queue = self._attach()

        async def pump():
            while True:
                frame = await queue.get()
                writer.write(encode_frame(frame))
                await writer.drain()

        pump_task = asyncio.create_task(pump())
        buffer = bytearray()
        try:
            while True:
                chunk = await reader.read(65536)
                if not chunk:
                    break
                buffer.extend(chunk)
                try:
                    messages = decode_frame_stream(buffer)
                except json.JSONDecodeError:
                    writer.write(encode_frame({"kind": "error", "message": "bad JSON frame"}))
                    await writer.drain()
                    break
                for message in messages:
                    for reply in await self.process(message):
                        writer.write(encode_frame(reply))
                        await writer.drain()
        finally:
            pump_task.cancel()
            self._detach(queue)
            writer.close()

    # -- WebSocket + static transport ----------------------------------------

    async def _ws_client(self, websocket):
        queue = self._attach()

        async def pump():
            while True:
                frame = await queue.get()
                await websocket.send(json.dumps(frame, separators=(",", ":"), sort_keys=True))

        pump_task = asyncio.create_task(pump())
        try:
            async for raw in websocket:
                try:
                    message = json.loads(raw)
                except json.JSONDecodeError:
                    await websocket.send(json.dumps({"kind": "error", "message": "bad JSON"}))
                    continue
                for reply in await self.process(message):
                    await websocket.send(json.dumps(reply, separators=(",", ":"), sort_keys=True))
        finally:
            pump_task.cancel()
            self._detach(queue)

    def _static_response(self, connection, request):
        path = request.path.split("?", 1)[0]
        if path == "/ws":
            return None  # proceed with the WebSocket handshake
        if self.assets_dir is None:
            return connection.respond(404, "no UI bundle configured\n")
        rel = "index.html" if path in ("/", "") else path.lstrip("/")
        target = (self.assets_dir / rel).resolve()
        if not str(target).startswith(str(self.assets_dir.resolve())) or not target.is_file():
            return connection.respond(404, "not found\n")
        ctype = mimetypes.guess_type(target.name)[0] or "application/octet-stream"
        body = target.read_bytes()
        headers = Headers(
            [("Content-Type", ctype), ("Content-Length", str(len(body)))]
        )
        return Response(200, "OK", headers, body)

    # -- lifecycle ---------------------------------------------------------------

    async def start(self, host: str = "127.0.0.1", port: int = 8750,
                    wire_port: int | None = None) -> tuple[int, int]:
        """Start the WebSocket/static server on ``port`` and TCP on ``wire_port``.

        ``wire_port`` defaults to ``port + 1``.  Returns the bound ports.
        """
        if wire_port is None:
            wire_port = port + 1
        ws_server = await ws_serve(
            self._ws_client, host, port, process_request=self._static_response
        )
        tcp_server = await asyncio.start_server(self._tcp_client, host, wire_port)
        self._servers = [ws_server, tcp_server]
        bound_ws = ws_server.sockets[0].getsockname()[1]
        bound_tcp = tcp_server.sockets[0].getsockname()[1]
        return bound_ws, bound_tcp

    async def stop(self) -> None:
        for server in self._servers:
            server.close()
            if hasattr(server, "wait_closed"):
                await server.wait_closed()
        self._servers = []

    async def serve_forever(self, host: str = "127.0.0.1", port: int = 8750,
                            wire_port: int | None = None) -> None:
        ws_port, tcp_port = await self.start(host, port, wire_port)
        print(
            f"session {self.session.name!r}: ws/http on :{ws_port}, wire on :{tcp_port}",
            flush=True,
        )
        await asyncio.Event().wait()
