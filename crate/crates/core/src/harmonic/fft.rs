use num_complex::Complex64;
use rustfft::{FftDirection, FftPlanner};

/// In-place unnormalized d-dimensional DFT of an `n^d` row-major array (last
/// axis contiguous). `Inverse` uses the kernel `e^{+2πi m·k/n}`.
pub(crate) fn fft_nd(data: &mut [Complex64], n: usize, d: usize, direction: FftDirection) {
    debug_assert_eq!(data.len(), n.pow(d as u32));
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft(n, direction);
    let mut scratch = vec![Complex64::new(0.0, 0.0); fft.get_inplace_scratch_len()];
    let mut line = vec![Complex64::new(0.0, 0.0); n];
    for axis in 0..d {
        let stride = n.pow((d - 1 - axis) as u32);
        let block = stride * n;
        for base in (0..data.len()).step_by(block) {
            for off in 0..stride {
                let start = base + off;
                if stride == 1 {
                    fft.process_with_scratch(&mut data[start..start + n], &mut scratch);
                    continue;
                }
                for (j, v) in line.iter_mut().enumerate() {
                    *v = data[start + j * stride];
                }
                fft.process_with_scratch(&mut line, &mut scratch);
                for (j, v) in line.iter().enumerate() {
                    data[start + j * stride] = *v;
                }
            }
        }
    }
}
