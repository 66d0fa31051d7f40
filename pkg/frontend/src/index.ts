export {
  bestSoFar,
  mean,
  meanCI95,
  MeanCI,
  normalCdf,
  sampleSd,
  studentTCdf,
  studentTQuantile,
} from "./stats.js";
export {
  EXACT_LIMIT,
  exactTwoSidedP,
  midranks,
  normalApproxP,
  rankSumCounts,
  RankSumResult,
  rankSumTest,
  SIGNIFICANCE_LEVEL,
} from "./wilcoxon.js";
export {
  Group,
  HistoryRow,
  loadRunSet,
  loadSummaries,
  readHistory,
  readSummary,
  Run,
  SummaryRow,
} from "./runset.js";
export {
  ConvergenceCurve,
  convergenceCurve,
  ConvergenceOptions,
  convergencePlot,
} from "./convergence.js";
export {
  parseTrajectory,
  TrajectoryExport,
  TrajectoryLeg,
  trajectoryPlot,
  visitOrder,
} from "./trajectory.js";
export {
  GroupStats,
  groupStats,
  objectiveTableCsv,
  runtimeTableCsv,
} from "./tables.js";
