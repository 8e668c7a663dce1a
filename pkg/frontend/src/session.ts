// One play session: the accepted-move log, the countdown, and full board
// reconstruction from the log alone (which is what undo relies on).

import * as sokoban from "./sokoban.js";
import * as klotski from "./klotski.js";
import type { Direction, Puzzle } from "./types.js";

export interface MoveLogEntry {
    move: string; // "U" for sokoban, "BD" for klotski
    at: number; // ms since session start
}

export class PlaySession {
    readonly puzzle: Puzzle;
    readonly startedAt: number;
    readonly timeLimitMs: number;
    log: MoveLogEntry[] = [];
    notes = ""; // local scratch pad, never submitted
    private lastRemaining: number;

    constructor(puzzle: Puzzle, now: number = Date.now()) {
        this.puzzle = puzzle;
        this.startedAt = now;
        this.timeLimitMs = puzzle.time_limit_ms;
        this.lastRemaining = this.timeLimitMs;
    }

    elapsedMs(now: number = Date.now()): number {
        return Math.max(0, now - this.startedAt);
    }

    /** Monotone non-increasing countdown, clamped at zero. */
    remainingMs(now: number = Date.now()): number {
        const remaining = Math.max(0, this.timeLimitMs - this.elapsedMs(now));
        this.lastRemaining = Math.min(this.lastRemaining, remaining);
        return this.lastRemaining;
    }

    expired(now: number = Date.now()): boolean {
        return this.remainingMs(now) <= 0;
    }

    /** Board produced by replaying the whole move log from the start text. */
    reconstruct(upTo: number = this.log.length): sokoban.SokobanState | klotski.KlotskiState {
        if (this.puzzle.board === null) throw new Error("no board for this task");
        if (this.puzzle.task === "sokoban") {
            let state = sokoban.parseBoard(this.puzzle.board);
            for (const entry of this.log.slice(0, upTo)) {
                const next = sokoban.tryMove(state, entry.move as Direction);
                if (next === null) throw new Error(`logged move ${entry.move} is illegal`);
                state = next;
            }
            return state;
        }
        let state = klotski.parseBoard(this.puzzle.board);
        for (const entry of this.log.slice(0, upTo)) {
            const next = klotski.tryMove(state, entry.move[0], entry.move[1] as Direction);
            if (next === null) throw new Error(`logged move ${entry.move} is illegal`);
            state = next;
        }
        return state;
    }

    /** Apply a move through the legality mirror; only accepted moves land
     * in the log. Returns whether the move was accepted. */
    tryApply(move: string, now: number = Date.now()): boolean {
        if (this.puzzle.board === null) return false;
        const current = this.reconstruct();
        if (this.puzzle.task === "sokoban") {
            const next = sokoban.tryMove(current as sokoban.SokobanState, move as Direction);
            if (next === null) return false;
        } else {
            const next = klotski.tryMove(
                current as klotski.KlotskiState,
                move[0],
                move[1] as Direction,
            );
            if (next === null) return false;
        }
        this.log.push({ move, at: this.elapsedMs(now) });
        return true;
    }

    undo(): void {
        this.log.pop();
    }

    moves(): string[] {
        return this.log.map((e) => e.move);
    }

    solved(): boolean {
        if (this.puzzle.board === null) return false;
        const state = this.reconstruct();
        if (this.puzzle.task === "sokoban") {
            return sokoban.isSolved(state as sokoban.SokobanState);
        }
        const big = this.puzzle.answer_spec.big_letter ?? "";
        return klotski.isSolved(state as klotski.KlotskiState, big);
    }
}
