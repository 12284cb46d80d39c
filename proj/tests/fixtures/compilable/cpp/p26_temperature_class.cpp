#include <iostream>

class Celsius {
 public:
  explicit Celsius(double v) : value_(v) {}
  double fahrenheit() const { return value_ * 9.0 / 5.0 + 32.0; }
  Celsius warmer(double by) const { return Celsius(value_ + by); }

 private:
  double value_;
};

int main() {
  Celsius c(21.5);
  Celsius w = c.warmer(3.0);
  std::cout << w.fahrenheit() << "\n";
  return 0;
}
