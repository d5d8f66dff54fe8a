/* tslint:disable */
/* eslint-disable */

export class Playground {
    free(): void;
    [Symbol.dispose](): void;
    /**
     * Case path of the game so far, one annotated line per move.
     */
    explain(): string;
    /**
     * Legal P1 edges.
     */
    hints(): string;
    constructor();
    /**
     * Plays an edge such as `g:1:0-1`, or `stop`; returns P2's answer.
     */
    play(mv: string): string;
    /**
     * Starts a new game (`graph` or `hyper`); returns the state.
     */
    start(game: string, n: number): string;
    state(): string;
    stop(): string;
}

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly __wbg_playground_free: (a: number, b: number) => void;
    readonly playground_explain: (a: number) => [number, number];
    readonly playground_hints: (a: number) => [number, number];
    readonly playground_new: () => number;
    readonly playground_play: (a: number, b: number, c: number) => [number, number];
    readonly playground_start: (a: number, b: number, c: number, d: number) => [number, number];
    readonly playground_state: (a: number) => [number, number];
    readonly playground_stop: (a: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_start: () => void;
}

export type SyncInitInput = BufferSource | WebAssembly.Module;

/**
 * Instantiates the given `module`, which can either be bytes or
 * a precompiled `WebAssembly.Module`.
 *
 * @param {{ module: SyncInitInput }} module - Passing `SyncInitInput` directly is deprecated.
 *
 * @returns {InitOutput}
 */
export function initSync(module: { module: SyncInitInput } | SyncInitInput): InitOutput;

/**
 * If `module_or_path` is {RequestInfo} or {URL}, makes a request and
 * for everything else, calls `WebAssembly.instantiate` directly.
 *
 * @param {{ module_or_path: InitInput | Promise<InitInput> }} module_or_path - Passing `InitInput` directly is deprecated.
 *
 * @returns {Promise<InitOutput>}
 */
export default function __wbg_init (module_or_path?: { module_or_path: InitInput | Promise<InitInput> } | InitInput | Promise<InitInput>): Promise<InitOutput>;
