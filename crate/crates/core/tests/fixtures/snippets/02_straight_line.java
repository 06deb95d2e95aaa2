class Snippet {
    int m(int a, int b) {
        int c = a + b;
        return c * 2;
    }
}
