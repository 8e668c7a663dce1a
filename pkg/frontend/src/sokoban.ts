// Client-side mirror of the box-pushing rules. It must never accept a move
// the server would reject, so the checks here are exactly the server's:
// step onto floor/goal, or push a box whose far cell is free.

import type { Direction } from "./types.js";

export interface SokobanState {
    rows: number;
    cols: number;
    walls: Set<string>;
    goals: Set<string>;
    boxes: Set<string>;
    player: [number, number];
}

const DELTAS: Record<Direction, [number, number]> = {
    U: [-1, 0],
    D: [1, 0],
    L: [0, -1],
    R: [0, 1],
};

const key = (r: number, c: number) => `${r},${c}`;

export function parseBoard(text: string): SokobanState {
    const lines = text.split("\n").filter((l) => l.trim().length > 0);
    const state: SokobanState = {
        rows: lines.length,
        cols: lines[0].length,
        walls: new Set(),
        goals: new Set(),
        boxes: new Set(),
        player: [0, 0],
    };
    lines.forEach((line, r) => {
        [...line].forEach((ch, c) => {
            if (ch === "#") state.walls.add(key(r, c));
            if (ch === "G" || ch === "*" || ch === "+") state.goals.add(key(r, c));
            if (ch === "B" || ch === "*") state.boxes.add(key(r, c));
            if (ch === "P" || ch === "+") state.player = [r, c];
        });
    });
    return state;
}

function cloneState(state: SokobanState): SokobanState {
    return {
        rows: state.rows,
        cols: state.cols,
        walls: state.walls,
        goals: state.goals,
        boxes: new Set(state.boxes),
        player: [state.player[0], state.player[1]],
    };
}

function isFloor(state: SokobanState, r: number, c: number): boolean {
    return r >= 0 && r < state.rows && c >= 0 && c < state.cols && !state.walls.has(key(r, c));
}

/** The state after the move, or null when the move is illegal. */
export function tryMove(state: SokobanState, dir: Direction): SokobanState | null {
    const [dr, dc] = DELTAS[dir];
    const [r, c] = state.player;
    const tr = r + dr;
    const tc = c + dc;
    if (!isFloor(state, tr, tc)) return null;
    const next = cloneState(state);
    if (state.boxes.has(key(tr, tc))) {
        const br = tr + dr;
        const bc = tc + dc;
        if (!isFloor(state, br, bc) || state.boxes.has(key(br, bc))) return null;
        next.boxes.delete(key(tr, tc));
        next.boxes.add(key(br, bc));
    }
    next.player = [tr, tc];
    return next;
}

export function isSolved(state: SokobanState): boolean {
    for (const box of state.boxes) {
        if (!state.goals.has(box)) return false;
    }
    return true;
}

export function toGrid(state: SokobanState): string[][] {
    const grid: string[][] = [];
    for (let r = 0; r < state.rows; r++) {
        const row: string[] = [];
        for (let c = 0; c < state.cols; c++) {
            const k = key(r, c);
            if (state.walls.has(k)) row.push("wall");
            else if (state.boxes.has(k)) row.push(state.goals.has(k) ? "box-goal" : "box");
            else if (state.player[0] === r && state.player[1] === c) row.push("player");
            else if (state.goals.has(k)) row.push("goal");
            else row.push("floor");
        }
        grid.push(row);
    }
    return grid;
}
