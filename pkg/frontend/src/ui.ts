// DOM rendering for the five puzzle views and the answer forms.

import * as sokoban from "./sokoban.js";
import * as klotski from "./klotski.js";
import { PALETTE } from "./types.js";
import type { Puzzle } from "./types.js";
import type { PlaySession } from "./session.js";

const COLOR_HEX: Record<string, string> = {
    white: "#F2F2F2",
    yellow: "#F4D03F",
    green: "#27AE60",
    blue: "#2E86DE",
    red: "#E74C3C",
    orange: "#E67E22",
    purple: "#8E44AD",
    cyan: "#17A2B8",
};

const BLOCK_COLORS = ["#E74C3C", "#F4D03F", "#2E86DE", "#27AE60", "#E67E22", "#8E44AD", "#17A2B8", "#95A5A6"];

export function clear(el: HTMLElement): void {
    while (el.firstChild) el.removeChild(el.firstChild);
}

export function renderImages(container: HTMLElement, puzzle: Puzzle): void {
    clear(container);
    for (const src of puzzle.images) {
        const img = document.createElement("img");
        img.src = src;
        img.className = "view-image";
        container.appendChild(img);
    }
}

export function renderSokoban(container: HTMLElement, session: PlaySession): void {
    clear(container);
    const state = session.reconstruct() as sokoban.SokobanState;
    const grid = sokoban.toGrid(state);
    const table = document.createElement("div");
    table.className = "board sokoban";
    table.style.gridTemplateColumns = `repeat(${state.cols}, 34px)`;
    grid.forEach((row) => {
        row.forEach((kind) => {
            const cell = document.createElement("div");
            cell.className = `cell ${kind}`;
            table.appendChild(cell);
        });
    });
    container.appendChild(table);
    const hint = document.createElement("p");
    hint.className = "hint";
    hint.textContent = sokoban.isSolved(state)
        ? "Solved! Submit your session."
        : "Arrow keys move the player.";
    container.appendChild(hint);
}

export function renderKlotski(
    container: HTMLElement,
    session: PlaySession,
    selected: string | null,
    onSelect: (letter: string) => void,
): void {
    clear(container);
    const state = session.reconstruct() as klotski.KlotskiState;
    const board = document.createElement("div");
    board.className = "board klotski";
    board.style.gridTemplateColumns = `repeat(${klotski.WIDTH}, 52px)`;
    const palette = new Map<string, string>();
    klotski.letters(state).forEach((letter, i) => {
        palette.set(letter, BLOCK_COLORS[i % BLOCK_COLORS.length]);
    });
    state.cells.forEach((row) => {
        row.forEach((ch) => {
            const cell = document.createElement("div");
            if (ch === ".") {
                cell.className = "cell floor";
            } else {
                cell.className = "cell block" + (ch === selected ? " selected" : "");
                cell.style.background = palette.get(ch) ?? "#ccc";
                cell.textContent = ch;
                cell.addEventListener("click", () => onSelect(ch));
            }
            board.appendChild(cell);
        });
    });
    container.appendChild(board);
    const exit = document.createElement("p");
    exit.className = "hint";
    const big = session.puzzle.answer_spec.big_letter ?? "?";
    exit.textContent = `Click a block, then use arrow keys. Park '${big}' on the bottom-center exit.`;
    container.appendChild(exit);
}

export function renderColorForm(container: HTMLElement, onPick: (color: string) => void): void {
    clear(container);
    const row = document.createElement("div");
    row.className = "color-row";
    for (const color of PALETTE) {
        const button = document.createElement("button");
        button.className = "color-button";
        button.style.background = COLOR_HEX[color];
        button.title = color;
        button.textContent = color;
        button.addEventListener("click", () => onPick(color));
        row.appendChild(button);
    }
    container.appendChild(row);
}

export function renderGridForm(container: HTMLElement, rows: number, cols: number): HTMLSelectElement[][] {
    clear(container);
    const grid = document.createElement("div");
    grid.className = "answer-grid";
    grid.style.gridTemplateColumns = `repeat(${cols}, auto)`;
    const selects: HTMLSelectElement[][] = [];
    for (let r = 0; r < rows; r++) {
        const rowSelects: HTMLSelectElement[] = [];
        for (let c = 0; c < cols; c++) {
            const select = document.createElement("select");
            for (const option of ["empty", ...PALETTE]) {
                const el = document.createElement("option");
                el.value = option;
                el.textContent = option;
                select.appendChild(el);
            }
            grid.appendChild(select);
            rowSelects.push(select);
        }
        selects.push(rowSelects);
    }
    container.appendChild(grid);
    return selects;
}

export function gridFormAnswer(selects: HTMLSelectElement[][]): string {
    return selects.map((row) => row.map((s) => s.value).join(" ")).join("\n");
}

export function formatMs(ms: number): string {
    const total = Math.ceil(ms / 1000);
    const minutes = Math.floor(total / 60);
    const seconds = total % 60;
    return `${minutes}:${seconds.toString().padStart(2, "0")}`;
}
