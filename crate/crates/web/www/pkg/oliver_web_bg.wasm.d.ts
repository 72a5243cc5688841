/* tslint:disable */
/* eslint-disable */
export const memory: WebAssembly.Memory;
export const a2_explorer: (a: number, b: number) => [number, number];
export const catalog_ids: () => [number, number];
export const group_info: (a: number, b: number) => [number, number];
export const vg_table: (a: number, b: number) => [number, number];
export const __wbindgen_externrefs: WebAssembly.Table;
export const __wbindgen_malloc: (a: number, b: number) => number;
export const __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
export const __wbindgen_free: (a: number, b: number, c: number) => void;
export const __wbindgen_start: () => void;
