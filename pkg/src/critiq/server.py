"""Length-delimited JSON transport for the critique service over TCP.

Framing: each message is the decimal byte length of the UTF-8 JSON payload,
a newline, then the payload. The same framing is used in both directions, and
every client request receives exactly one reply frame.
"""

from __future__ import annotations

import asyncio
import json
import os
import socket
from typing import Any

from .service import CritiqueService

DEFAULT_PORT = 7341
PORT_ENV_VAR = "CRITIQ_PORT"
_MAX_FRAME = 32 * 1024 * 1024


def default_port() -> int:
    env = os.environ.get(PORT_ENV_VAR)
    if env:
        try:
            return int(env)
        except ValueError:
            pass
    return DEFAULT_PORT


def encode_frame(message: dict[str, Any]) -> bytes:
    payload = json.dumps(message, ensure_ascii=False).encode("utf-8")
    return str(len(payload)).encode("ascii") + b"\n" + payload


async def read_frame(reader: asyncio.StreamReader) -> dict[str, Any] | None:
    try:
        header = await reader.readuntil(b"\n")
    except (asyncio.IncompleteReadError, ConnectionResetError):
        return None
    try:
        length = int(header.strip())
    except ValueError:
        raise ValueError(f"bad frame header: {header!r}")
    if length < 0 or length > _MAX_FRAME:
        raise ValueError(f"bad frame length: {length}")
    try:
        payload = await reader.readexactly(length)
    except (asyncio.IncompleteReadError, ConnectionResetError):
        return None
    return json.loads(payload.decode("utf-8"))


class CritiqueServer:
    """Asyncio TCP server; handlers run on the event loop, so per-session
    message handling is naturally serialized."""

    def __init__(self, service: CritiqueService, host: str = "127.0.0.1", port: int = DEFAULT_PORT):
        self.service = service
        self.host = host
        self.port = port
        self._server: asyncio.AbstractServer | None = None
        self._wakers: dict[str, asyncio.Task] = {}

    async def _handle_connection(self, reader: asyncio.StreamReader,
                                 writer: asyncio.StreamWriter) -> None:
        try:
            while True:
                try:
                    message = await read_frame(reader)
                except ValueError as exc:
                    writer.write(encode_frame(
                        {"type": "error", "code": "BadMessage", "detail": str(exc)}))
                    await writer.drain()
                    break
                if message is None:
                    break
                reply = self.service.handle_message(message)
                writer.write(encode_frame(reply))
                await writer.drain()
                if isinstance(message, dict):
                    self._ensure_waker(message.get("session_id"))
        finally:
            writer.close()
            try:
                await writer.wait_closed()
            except (ConnectionResetError, BrokenPipeError):
                pass

    def _ensure_waker(self, session_id: Any) -> None:
        """Keep one task per session that fires the debounced recompute."""
        if not isinstance(session_id, str) or not session_id:
            return
        if self.service.deadline(session_id) is None:
            return
        task = self._wakers.get(session_id)
        if task is not None and not task.done():
            return
        self._wakers[session_id] = asyncio.get_running_loop().create_task(
            self._waker(session_id))

    async def _waker(self, session_id: str) -> None:
        while True:
            deadline = self.service.deadline(session_id)
            if deadline is None:
                return
            delay = deadline - self.service.clock()
            if delay > 0:
                await asyncio.sleep(delay)
                continue
            self.service.run_due()
            return

    async def start(self) -> None:
        self._server = await asyncio.start_server(self._handle_connection, self.host, self.port)

    async def serve_forever(self) -> None:
        if self._server is None:
            await self.start()
        async with self._server:
            await self._server.serve_forever()

    async def stop(self) -> None:
        for task in self._wakers.values():
            task.cancel()
        if self._server is not None:
            self._server.close()
            await self._server.wait_closed()


def run_server(service: CritiqueService, host: str = "127.0.0.1",
               port: int = DEFAULT_PORT) -> None:
    """Blocking entry point; returns on KeyboardInterrupt."""
    server = CritiqueServer(service, host=host, port=port)

    async def _run() -> None:
        await server.start()
        try:
            await server.serve_forever()
        except asyncio.CancelledError:
            pass
        finally:
            await server.stop()

    try:
        asyncio.run(_run())
    except KeyboardInterrupt:
        pass


class ServiceClient:
    """Small blocking client speaking the frame protocol; used by tests and tools."""

    def __init__(self, host: str = "127.0.0.1", port: int = DEFAULT_PORT, timeout: float = 10.0):
        self.sock = socket.create_connection((host, port), timeout=timeout)
        self._buffer = b""

    def request(self, message: dict[str, Any]) -> dict[str, Any]:
        self.sock.sendall(encode_frame(message))
        header = self._read_until(b"\n")
        length = int(header.strip())
        payload = self._read_exactly(length)
        return json.loads(payload.decode("utf-8"))

    def _read_until(self, sep: bytes) -> bytes:
        while sep not in self._buffer:
            chunk = self.sock.recv(65536)
            if not chunk:
                raise ConnectionError("connection closed by server")
            self._buffer += chunk
        index = self._buffer.index(sep) + len(sep)
        out, self._buffer = self._buffer[:index], self._buffer[index:]
        return out

    def _read_exactly(self, n: int) -> bytes:
        while len(self._buffer) < n:
            chunk = self.sock.recv(65536)
            if not chunk:
                raise ConnectionError("connection closed by server")
            self._buffer += chunk
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return out

    def close(self) -> None:
        self.sock.close()

    def __enter__(self) -> ServiceClient:
        return self

    def __exit__(self, *exc) -> None:
        self.close()
