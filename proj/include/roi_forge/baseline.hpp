#pragma once

// The reference case study: a private university data-warehouse project
// appraised over five years. data/baseline_scenario.json is the emitted
// form of this function and is checked against it by the test suite.

#include "roi_forge/scenario.hpp"

namespace roi_forge {

inline Scenario baseline_scenario() {
  using T = Tangibility;
  using M = Measurability;
  using D = DomainClass;
  using V = ValueClass;
  using X = MeasurementMethod;
  auto rp = [](std::int64_t v) { return Money::rupiah(v); };
  auto pct = [](std::int64_t v) { return Rate::percent(v); };

  Scenario s;
  s.meta.name = "Data warehouse for a private university (baseline)";
  s.meta.currency = "IDR";
  s.meta.description =
      "Simple ROI of a data warehouse for top management reporting; five-year horizon; "
      "benefits from reporting savings, management productivity and new-student intake.";
  s.horizon = 5;

  s.benefits.items = {
      {1, "Mengurangi biaya administrasi pembuatan laporan", T::Tangible, M::Measurable, D::Technology, V::Financial, X::SimpleRoi},
      {2, "Mengurangi tenaga pembuatan laporan", T::Tangible, M::Measurable, D::Technology, V::Financial, X::SimpleRoi},
      {3, "Mempercepat waktu pembuatan laporan/administrasi", T::Tangible, M::Immeasurable, D::Technology, V::NonFinancial, X::None},
      {4, "Meningkatkan jumlah mahasiswa baru", T::Intangible, M::Measurable, D::Business, V::Financial, X::SimpleRoi},
      {5, "Meningkatkan bantuan dana dari pihak ketiga", T::Intangible, M::Measurable, D::Business, V::Financial, X::SimpleRoi},
      {6, "Meningkatkan produktivitas manajemen tingkat atas", T::Intangible, M::Measurable, D::Business, V::Financial, X::SimpleRoi},
      {7, "Meningkatkan citra perguruan tinggi", T::Intangible, M::Immeasurable, D::Business, V::NonFinancial, X::None},
      {8, "Meningkatkan hubungan dengan stakeholder", T::Intangible, M::Immeasurable, D::Business, V::NonFinancial, X::None},
      {9, "Meningkatkan moral karyawan", T::Intangible, M::Immeasurable, D::Business, V::NonFinancial, X::None},
      {10, "Meningkatkan pengetahuan manajemen", T::Intangible, M::Immeasurable, D::Technology, V::NonFinancial, X::None},
      {11, "Meningkatkan perencanaan pengelolaan data", T::Intangible, M::Immeasurable, D::Technology, V::NonFinancial, X::None},
      {12, "Meningkatkan fleksibilitas pemanfaatan data", T::Intangible, M::Immeasurable, D::Technology, V::NonFinancial, X::None},
      {13, "Meningkatkan kemampuan pengambilan keputusan", T::Intangible, M::Immeasurable, D::Technology, V::NonFinancial, X::None},
  };
  // Third-party funding could arrive without the project, so it is not measured.
  s.benefits.exclusions = {5};

  s.investment.staff = {
      {"Kepala Proyek", 1, rp(20'000), Rate::integer(7), 260},
      {"Data Warehouse Administrator", 2, rp(15'000), Rate::integer(7), 260},
      {"Programer", 2, rp(10'000), Rate::integer(7), 260},
      {"Administrasi", 1, rp(5'000), Rate::integer(7), 260},
  };
  s.investment.hardware = {
      {"Server HP Proliant ML110G2", rp(12'000'000)},
      {"Stabilizer", rp(30'000'000)},
      {"UPS", rp(40'000'000)},
  };
  s.investment.network = {
      {"Switch 3Com 3C16470 (2 unit)", rp(2'800'000)},
      {"Kabel UTP Kategori 6", rp(1'050'000)},
      {"RJ-45 + connector shield", rp(750'000)},
      {"Network Interface Card", rp(1'200'000)},
  };
  s.investment.support = {
      {"Mengadakan Seminar", rp(5'000'000)},
      {"Peralatan Alat Tulis Kantor", rp(2'000'000)},
      {"Lain-lain", rp(5'000'000)},
      {"Lampu cadangan", rp(500'000)},
      {"Rak Komputer Server", rp(1'900'000)},
  };

  auto running = [&](const char* name, std::int64_t base, int start) {
    return CostLine{name, CostCategory::RunningCost, {rp(base), start, pct(90)}, std::nullopt, std::nullopt};
  };
  s.running_costs = {
      running("Penyempurnaan Sistem", 30'150'000, 2),
      running("Peningkatan memory server", 16'000'000, 3),
      running("Peningkatan hardisk server", 24'000'000, 3),
  };

  auto operational = [&](const char* name, std::int64_t base, std::int64_t saving_pct, int benefit) {
    return CostLine{name, CostCategory::OperationalCost, {rp(base), 1, pct(110)}, pct(saving_pct), benefit};
  };
  s.operational_costs = {
      operational("Kertas", 360'000, 75, 1),
      operational("Tinta Printer", 1'100'000, 75, 1),
      operational("Tinta FotoCopy", 450'000, 75, 1),
      operational("Honor panitia", 12'000'000, 100, 1),
      operational("Rapat", 35'000'000, 75, 1),
      operational("Sistem Analis (1 orang)", 60'000'000, 100, 2),
      operational("Programmer (2 orang)", 72'000'000, 100, 2),
      operational("Staf (2 orang)", 48'000'000, 100, 2),
  };

  s.productivity.loss_before = rp(69'600'000);
  s.productivity.loss_after = rp(15'120'000);
  s.productivity.growth = pct(10);
  s.productivity.benefit_id = 6;
  s.productivity.roles = {
      {"Dekan", pct(50), pct(65)},
      {"Ketua Program Studi", pct(60), pct(75)},
      {"Sekretaris Program Studi", pct(70), pct(85)},
  };

  auto& e = s.enrollment;
  e.benefit_id = 4;
  e.history.programs = {"TI", "SI", "SK", "AK"};
  e.history.years = {
      {1986, {520, 892, 37, 113}},  {1987, {169, 599, 60, 270}},   {1988, {156, 389, 86, 260}},
      {1989, {79, 580, 59, 124}},   {1990, {142, 1072, 51, 126}},  {1991, {202, 1078, 33, 71}},
      {1992, {261, 1038, 71, 126}}, {1993, {205, 835, 148, 339}},  {1994, {254, 898, 95, 318}},
      {1995, {402, 1185, 122, 328}}, {1996, {349, 1031, 111, 339}}, {1997, {525, 1205, 93, 304}},
      {1998, {501, 1081, 156, 256}}, {1999, {645, 1268, 152, 325}}, {2000, {697, 1108, 117, 274}},
      {2001, {673, 861, 46, 197}},  {2002, {559, 733, 35, 237}},   {2003, {455, 534, 32, 193}},
      {2004, {580, 543, 43, 166}},  {2005, {312, 295, 33, 79}},
  };
  e.growth = pct(20);
  e.fee.first_semester_items = {
      {"Daftar Ulang", rp(200'000)},
      {"SKS (20 sks x 65000)", rp(1'300'000)},
      {"Operasional pendidikan", rp(1'960'000)},
      {"Dana Kemahasiswaan", rp(15'000)},
      {"Koperasi Mahasiswa", rp(10'000)},
      {"Paket Mahasiswa baru", rp(500'000)},
  };
  e.fee.donation_grades = {rp(6'000'000), rp(6'500'000), rp(7'000'000), rp(8'000'000)};
  e.fee.earmarked = {"Dana Kemahasiswaan", "Koperasi Mahasiswa", "Paket Mahasiswa baru"};
  e.fee.overhead_fraction = pct(40);
  e.fee.escalation = pct(5);
  e.schedule = default_payment_schedule();

  s.options.rounding = RoundingMode::HalfUp;
  s.options.table15_compat = true;
  return s;
}

}  // namespace roi_forge
