// opcal: calibration of shift-invariant diffusion-operator spectra
// SPDX-License-Identifier: Apache-2.0

// Placeholder entry point; the subcommand driver lands with the io module.
int main() { return 0; }
