public class Main {
    static int depth = 0;                         // field: outside any method

    public static void main(String[] args) {
        f();                                      // s1
    }

    static void f() {
        int k = 0;                                // v1 s2
        while (k < 3) {                           // loop1 s3
            k++;                                  // s4
        }
        depth++;                                  // s5
        if (depth < 2) main(null);                // if1 s6, s7 (cycle main -> f -> main)
    }
}
