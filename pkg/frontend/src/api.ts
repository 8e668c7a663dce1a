// Thin fetch wrappers over the benchmark server's JSON API.

import type { Puzzle, SessionSubmission, SessionVerdict } from "./types.js";

export class ApiError extends Error {
    readonly status: number;
    constructor(status: number, message: string) {
        super(message);
        this.status = status;
    }
}

async function expectOk(response: Response): Promise<Response> {
    if (!response.ok) {
        throw new ApiError(response.status, await response.text());
    }
    return response;
}

export async function fetchPuzzle(
    task: string,
    tier: string,
    session: string,
    base = "",
): Promise<Puzzle> {
    const params = new URLSearchParams({ task, tier, session });
    const response = await expectOk(await fetch(`${base}/api/puzzle?${params}`));
    return (await response.json()) as Puzzle;
}

export async function fetchInstance(instanceId: string, base = ""): Promise<Puzzle> {
    const response = await expectOk(await fetch(`${base}/api/instance/${instanceId}`));
    return (await response.json()) as Puzzle;
}

export async function submitSession(
    body: SessionSubmission,
    base = "",
): Promise<SessionVerdict> {
    const response = await expectOk(
        await fetch(`${base}/api/sessions`, {
            method: "POST",
            headers: { "Content-Type": "application/json" },
            body: JSON.stringify(body),
        }),
    );
    return (await response.json()) as SessionVerdict;
}
