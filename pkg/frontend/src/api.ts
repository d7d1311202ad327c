// HTTP + SSE client for the simulator service.

import type { Command, MaterialRow, Snapshot } from "./types.js";

export class ApiError extends Error {
  constructor(
    readonly errorName: string,
    readonly detail: string,
  ) {
    super(`${errorName}: ${detail}`);
  }
}

export class ApiClient {
  constructor(readonly baseUrl: string = "") {}

  async getState(): Promise<Snapshot> {
    const resp = await fetch(`${this.baseUrl}/state`);
    return resp.json();
  }

  async getMaterials(): Promise<MaterialRow[]> {
    const resp = await fetch(`${this.baseUrl}/materials`);
    return resp.json();
  }

  async postCommand(command: Command): Promise<Snapshot> {
    const resp = await fetch(`${this.baseUrl}/command`, {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(command),
    });
    const body = await resp.json();
    if (!resp.ok) {
      throw new ApiError(body.error ?? "Error", body.detail ?? resp.statusText);
    }
    return body;
  }

  // Subscribes to the snapshot stream. On drop, reconnects and resyncs
  // with a full GET /state before resuming.
  connectStream(onSnapshot: (snap: Snapshot) => void): () => void {
    let closed = false;
    let source: EventSource | null = null;

    const open = () => {
      if (closed) return;
      source = new EventSource(`${this.baseUrl}/stream`);
      source.onmessage = (event) => onSnapshot(JSON.parse(event.data));
      source.onerror = () => {
        source?.close();
        if (closed) return;
        setTimeout(async () => {
          if (closed) return;
          onSnapshot(await this.getState());
          open();
        }, 1000);
      };
    };
    open();
    return () => {
      closed = true;
      source?.close();
    };
  }
}
