/** Fixed-precision rendering of service numbers.
 *
 * Every figure shown in the UI is formatted from the raw service response
 * value with this one function, so display fidelity can be checked by
 * string comparison against a re-format of the service's own number.
 */

export const DISPLAY_DECIMALS = 4;

export function formatValue(value: number): string {
  return value.toFixed(DISPLAY_DECIMALS);
}
