// Payload shapes of the benchmark server's JSON API.

export type Direction = "U" | "D" | "L" | "R";

export interface AnswerSpec {
    kind: "color" | "grid" | "moves" | "block_moves";
    rows: number | null;
    cols: number | null;
    big_letter: string | null;
}

export interface Puzzle {
    instance_id: string;
    task: string;
    category: string;
    tier: string;
    prompt: string;
    images: string[];
    board: string | null;
    answer_spec: AnswerSpec;
    time_limit_ms: number;
}

export interface SessionVerdict {
    valid: boolean;
    correct: boolean;
    optimal_len: number | null;
    over_time: boolean;
}

export interface SessionSubmission {
    instance_id: string;
    session: string;
    moves?: string[];
    answer?: string;
    elapsed_ms: number;
}

export const PALETTE = [
    "white",
    "yellow",
    "green",
    "blue",
    "red",
    "orange",
    "purple",
    "cyan",
] as const;
