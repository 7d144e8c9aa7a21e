// Session client over a WebSocket-shaped transport. The transport is
// injected so tests can use the `ws` package while the browser passes
// its native WebSocket.

import type { ClientMessage, ServerMessage } from "./protocol.js";
import { parseServerMessage } from "./protocol.js";

export interface Transport {
  send(data: string): void;
  close(): void;
  onmessage: ((event: { data: unknown }) => void) | null;
}

interface Waiter {
  expectsSimFrame: boolean;
  resolve: (message: ServerMessage) => void;
}

export class SessionClient {
  private pending: Waiter[] = [];
  onPush: (message: ServerMessage) => void = () => {};

  constructor(private transport: Transport) {
    transport.onmessage = (event) => {
      const message = parseServerMessage(String(event.data));
      const waiter = this.pending[0];
      if (!waiter) {
        this.onPush(message); // streamed frame with no request outstanding
        return;
      }
      if (message.type === "simFrame" && !waiter.expectsSimFrame) {
        // a streamed frame interleaved before the actual response
        this.onPush(message);
        return;
      }
      this.pending.shift();
      waiter.resolve(message);
    };
  }

  /** Send a request; resolves with its single response. Streamed
   * simFrame pushes are routed to onPush instead. */
  request(message: ClientMessage): Promise<ServerMessage> {
    const expectsSimFrame = message.type === "runSimulation" || message.type === "simTick";
    return new Promise((resolve) => {
      this.pending.push({ expectsSimFrame, resolve });
      this.transport.send(JSON.stringify(message));
    });
  }

  close(): void {
    this.transport.close();
  }
}
