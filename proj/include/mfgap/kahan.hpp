#pragma once
// Compensated (Kahan) summation.  Every floating-point accumulation in the
// library runs through this so results are reproducible to the last bit for
// a fixed iteration order.

namespace mfgap {

class KahanSum {
public:
    void add(double x) {
        double y = x - c_;
        double t = s_ + y;
        c_ = (t - s_) - y;
        s_ = t;
    }
    double value() const { return s_; }

private:
    double s_ = 0.0;
    double c_ = 0.0;
};

}  // namespace mfgap
