// Client-side mirror of the sliding-block rules: one cell per move, all
// swept cells must be empty, blocks never rotate.

import type { Direction } from "./types.js";

export const WIDTH = 4;
export const HEIGHT = 5;

export interface KlotskiState {
    // letter per cell, "." for empty, row-major
    cells: string[][];
}

const DELTAS: Record<Direction, [number, number]> = {
    U: [-1, 0],
    D: [1, 0],
    L: [0, -1],
    R: [0, 1],
};

export function parseBoard(text: string): KlotskiState {
    const lines = text.split("\n").filter((l) => l.trim().length > 0);
    if (lines.length !== HEIGHT || lines.some((l) => l.length !== WIDTH)) {
        throw new Error("board text must be 4x5");
    }
    return { cells: lines.map((l) => [...l]) };
}

export function boardText(state: KlotskiState): string {
    return state.cells.map((row) => row.join("")).join("\n");
}

export function blockCells(state: KlotskiState, letter: string): [number, number][] {
    const cells: [number, number][] = [];
    state.cells.forEach((row, r) =>
        row.forEach((ch, c) => {
            if (ch === letter) cells.push([r, c]);
        }),
    );
    return cells;
}

export function letters(state: KlotskiState): string[] {
    const seen = new Set<string>();
    for (const row of state.cells) for (const ch of row) if (ch !== ".") seen.add(ch);
    return [...seen].sort();
}

/** The state after sliding `letter` one cell, or null when illegal. */
export function tryMove(state: KlotskiState, letter: string, dir: Direction): KlotskiState | null {
    const cells = blockCells(state, letter);
    if (cells.length === 0) return null;
    const [dr, dc] = DELTAS[dir];
    const own = new Set(cells.map(([r, c]) => `${r},${c}`));
    for (const [r, c] of cells) {
        const nr = r + dr;
        const nc = c + dc;
        if (nr < 0 || nr >= HEIGHT || nc < 0 || nc >= WIDTH) return null;
        if (state.cells[nr][nc] !== "." && !own.has(`${nr},${nc}`)) return null;
    }
    const next: KlotskiState = { cells: state.cells.map((row) => [...row]) };
    for (const [r, c] of cells) next.cells[r][c] = ".";
    for (const [r, c] of cells) next.cells[r + dr][c + dc] = letter;
    return next;
}

export function emptyCount(state: KlotskiState): number {
    let n = 0;
    for (const row of state.cells) for (const ch of row) if (ch === ".") n++;
    return n;
}

/** Solved when the 2x2 block covers rows 3-4, columns 1-2. */
export function isSolved(state: KlotskiState, bigLetter: string): boolean {
    return (
        state.cells[3][1] === bigLetter &&
        state.cells[3][2] === bigLetter &&
        state.cells[4][1] === bigLetter &&
        state.cells[4][2] === bigLetter
    );
}
