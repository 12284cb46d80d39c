#include <math.h>
#include <stdio.h>

struct point {
  double x;
  double y;
};

static double dist(struct point a, struct point b) {
  double dx = a.x - b.x;
  double dy = a.y - b.y;
  return sqrt(dx * dx + dy * dy);
}

int main(void) {
  struct point p = {1.0, 2.0};
  struct point q = {4.0, 6.0};
  printf("%.1f\n", dist(p, q));
  return 0;
}
