//! Shared fixtures for the integration tests.
//!
//! The `oracle` constants were produced by `tests/oracle/oracle.py`, which
//! sums Boltzmann weights over the closed-form levels at 50 significant
//! digits without diagonalizing anything.
#![allow(dead_code)]

use spinotto::{EngineConfig, SpinQuantumNumber};

pub fn spin(twice: u32) -> SpinQuantumNumber {
    SpinQuantumNumber::from_twice(twice).unwrap()
}

/// B1 = 4, B2 = 3, T1 = 1, T2 = 0.5.
pub fn reference_engine(twice: u32, j: f64) -> EngineConfig {
    EngineConfig::new(spin(twice), j, 4.0, 3.0, 1.0, 0.5).unwrap()
}

/// Absolute tolerance on values of order one, relative beyond.
pub fn close(x: f64, expected: f64, tol: f64) -> bool {
    (x - expected).abs() <= tol * expected.abs().max(1.0)
}

#[allow(clippy::excessive_precision)]
pub mod oracle {
    pub const P_HALF: [f64; 4] = [
        0.998_919_008_834_995_344_066_861_1,
        0.000_745_778_755_713_906_318_648_097_5,
        0.000_335_099_995_765_559_979_150_749_2,
        0.000_000_112_413_525_189_635_340_099_390_8,
    ];

    pub const CYCLE_S1_J01_W: f64 = 0.002_748_484_916_949_904_998_441_252;
    pub const CYCLE_S1_J01_ETA: f64 = 0.282_180_513_317_670_456_806_828_1;
    pub const CYCLE_S1_J01_Q1: f64 = 0.009_740_165_557_980_051_429_928_453;
    pub const CYCLE_S1_J01_Q2: f64 = -0.006_991_680_641_030_146_431_487_202;
    pub const CYCLE_S1_J01_WA: f64 = 0.001_612_205_913_834_845_001_796_875;
    pub const CYCLE_S1_J01_WB: f64 = 0.001_136_279_003_115_059_996_644_377;
    pub const CYCLE_S1_J01_PS: f64 = -0.001_567_217_637_274_460_704_795_691;

    pub const LOCAL_S1_J4_W: f64 = 0.000_658_411_911_728_518_275_397_953_6;
    pub const LOCAL_S1_J4_Q1: f64 = 0.002_633_647_646_914_277_022_619_017;
    pub const LOCAL_S1_J4_Q2: f64 = -0.001_975_235_735_185_758_747_221_063;
    pub const LOCAL_S1_J4_WA: f64 = -0.000_219_470_637_242_847_919_941_261_3;
    pub const LOCAL_S1_J4_WB: f64 = 0.000_877_882_548_971_366_195_339_214_9;
    pub const LOCAL_S1_J4_PS: f64 = 6.372_532_100_071_316e-18;
    pub const LOCAL_S1_J4_Q1A: f64 = -0.000_877_882_548_971_391_679_765_045_2;
    pub const LOCAL_S1_J4_Q1B: f64 = 0.003_511_530_195_885_464_781_356_86;

    /// `(2s, T_A hot, T_A cold)` at J = 0.1, hot (B = 4, T = 1), cold (B = 3, T = 0.5).
    pub const TA_J01: [(u32, f64, f64); 6] = [
        (1, 1.063_493_286_332_124_669_573_543, 0.549_991_340_845_249_431_253_262_9),
        (2, 1.132_255_113_855_734_863_407_924, 0.602_341_423_770_621_978_577_188_1),
        (3, 1.207_917_969_856_354_776_079_037, 0.661_213_547_645_549_325_369_765),
        (4, 1.292_330_198_649_570_641_085_433, 0.730_047_575_643_739_058_180_976_5),
        (5, 1.387_693_697_015_180_913_531_467, 0.812_919_834_949_171_029_279_900_1),
        (6, 1.496_765_447_262_562_499_645_11, 0.915_503_310_705_417_893_210_478),
    ];

    /// Same as [`TA_J01`] at J = 4, s ≥ 1.
    pub const TA_J4: [(u32, f64, f64); 5] = [
        (2, -11.549_941_555_296_372_436_728_77, -8.656_285_341_337_213_013_861_183),
        (3, -7.284_880_405_232_822_054_609_178, -5.461_476_085_813_492_536_230_751),
        (4, -5.772_526_611_786_902_500_104_539, -4.328_109_101_091_198_751_236_442),
        (5, -4.971_923_312_164_136_672_098_419, -3.728_026_686_019_892_534_181_65),
        (6, -4.465_860_678_915_097_860_852_887, -3.348_677_156_325_288_034_334_173),
    ];

    /// Spin-B pairwise temperatures for s = 1, J = 0.1, B = 4, T = 1,
    /// pairs (1, 0) then (0, −1).
    pub const TB_S1_PAIRS: [f64; 2] = [1.047_357_477_625_832_498_242_598, 1.077_058_765_223_484_151_840_184];

    pub const COV_HALF_J02: f64 = -0.000_662_606_733_266_039_687_140_368_8;
    pub const DOT_HALF_J02: f64 = 0.248_341_754_462_775_724_840_474_8;
    pub const SZA_HALF_J02: f64 = -0.499_003_367_920_539_955_675_510_8;

    pub const PUREJ_S1_W: f64 = -0.029_105_263_541_787_632_320_923_3;
    pub const PUREJ_S1_PS: f64 = -0.018_190_789_713_617_270_200_577_06;
    pub const PUREJ_S1_WMF: f64 = -0.008_234_634_457_220_263_882_240_396;
    pub const PUREJ_S1_WCOOP: f64 = -0.012_635_994_627_347_104_556_442_5;
    pub const PUREJ_S1_COV1: f64 = -0.007_898_248_614_796_635_170_215_443;
    pub const PUREJ_S1_COV2: f64 = -0.000_000_751_972_704_694_822_438_878_753_4;
    pub const PUREJ_S1_RATIO: f64 = 1.767_246_845_806_716_725_437_66;

    pub const GEN_HALF_W: f64 = 0.002_611_126_117_894_264_373_844_448;
    pub const GEN_HALF_Q1: f64 = 0.013_049_007_139_250_605_745_055_4;
    pub const GEN_HALF_Q2: f64 = -0.010_437_881_021_356_341_371_210_95;
    pub const GEN_HALF_PS: f64 = -0.001_627_814_167_295_967_656_048_504;
    pub const GEN_HALF_W_SIMPLE: f64 = 0.001_956_688_725_865_519_249_341_626;
    pub const GEN_HALF_WMF: f64 = 0.001_565_748_157_116_908_627_386_239;
    pub const GEN_HALF_WCOOP: f64 = -0.000_520_370_196_339_552_880_928_030_1;
    pub const GEN_HALF_COV1: f64 = -0.000_662_606_733_266_039_687_140_368_8;
    pub const GEN_HALF_COV2: f64 = -0.000_012_143_987_841_598_585_980_331_16;
    pub const GEN_HALF_RATIO: f64 = 0.833_826_981_058_774_842_989_664_2;

    pub const STRONG_S1_J50_W: f64 = 0.000_658_411_911_728_526_772_105_508;
}
