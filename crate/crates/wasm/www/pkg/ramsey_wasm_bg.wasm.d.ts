/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const __wbg_playground_free: (a: number, b: number) => void;
export const playground_explain: (a: number) => [number, number];
export const playground_hints: (a: number) => [number, number];
export const playground_new: () => number;
export const playground_play: (a: number, b: number, c: number) => [number, number];
export const playground_start: (a: number, b: number, c: number, d: number) => [number, number];
export const playground_state: (a: number) => [number, number];
export const playground_stop: (a: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_start: () => void;
