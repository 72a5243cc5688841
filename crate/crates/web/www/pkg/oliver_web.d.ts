/* tslint:disable */
/* eslint-disable */

/**
 * The two modules built from each `Z_pq` quotient, sampled on every class.
 */
export function a2_explorer(selector: string): string;

/**
 * Catalog ids small enough for the demo.
 */
export function catalog_ids(): string;

/**
 * Laitinen number, predicates, b table and ranks.
 */
export function group_info(selector: string): string;

/**
 * Parity and `d_{V(G)}` over the reduced proper pairs.
 */
export function vg_table(selector: string): string;

export type InitInput = RequestInfo | URL | Response | BufferSource | WebAssembly.Module;

export interface InitOutput {
    readonly memory: WebAssembly.Memory;
    readonly a2_explorer: (a: number, b: number) => [number, number];
    readonly catalog_ids: () => [number, number];
    readonly group_info: (a: number, b: number) => [number, number];
    readonly vg_table: (a: number, b: number) => [number, number];
    readonly __wbindgen_externrefs: WebAssembly.Table;
    readonly __wbindgen_malloc: (a: number, b: number) => number;
    readonly __wbindgen_realloc: (a: number, b: number, c: number, d: number) => number;
    readonly __wbindgen_free: (a: number, b: number, c: number) => void;
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
